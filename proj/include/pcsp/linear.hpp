#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcsp/rational.hpp"

namespace pcsp {

/// An augmented system of exact-rational linear equations.
struct RationalLinearSystem {
    int num_vars = 0;
    std::vector<std::pair<std::vector<Rational>, Rational>> rows; // (coefficients, constant)
};

/// The value of one variable as an affine form constant + sum coeffs[j]*t_j
/// over the free parameters.
struct AffineForm {
    Rational constant;
    std::vector<Rational> coeffs;

    Rational evaluate(const std::vector<Rational> & t) const;
};

/// The full solution set of a consistent system: every variable as an affine
/// form over the free parameters. Free variable j carries the form t_j.
struct ParametrizedSolution {
    int num_vars = 0;
    std::vector<int> free_vars;    // original indices, parameter order
    std::vector<int> pivot_vars;   // original indices of dependent variables
    std::vector<AffineForm> forms; // per original variable

    /// Substitutes a parameter vector; the result satisfies the originating
    /// system exactly.
    std::vector<Rational> evaluate(const std::vector<Rational> & t) const;
};

/// Exact Gauss-Jordan elimination with deterministic pivoting (first column
/// with a nonzero entry, first such row). Returns the parametrized solution
/// set or nothing when some row reduces to 0 = c with c nonzero.
std::optional<ParametrizedSolution> eliminate_rational(const RationalLinearSystem & sys);

/// A rational solution point with no coordinate equal to 1/3, or nothing when
/// some variable is identically 1/3. Parameters are fixed in order; when
/// fixing t_j, every variable whose last nonzero parameter coefficient sits
/// at j forbids exactly one value, and t_j becomes the smallest non-negative
/// integer avoiding all of them.
std::optional<std::vector<Rational>> avoid_third(const ParametrizedSolution & ps);

/// A system of linear equations over the prime field Z_p.
struct ModPSystem {
    int p = 2;
    int num_vars = 0;
    std::vector<std::pair<std::vector<int>, int>> rows;
};

/// Gaussian elimination over Z_p; one solution (free variables set to 0) or
/// nothing. Throws std::invalid_argument when p is not prime.
std::optional<std::vector<int>> solve_mod_p(const ModPSystem & sys);

// Text format:
//   modp <p>
//   <c1> <c2> ... <ck> | <d>
//   end
ModPSystem parse_mod_p_system(const std::string & text);
std::string serialize_mod_p_system(const ModPSystem & sys);

} // namespace pcsp
