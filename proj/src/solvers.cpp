#include "pcsp/solvers.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pcsp {

bool satisfies_instance(const PPInstance & inst, const RelationalStructure & s,
                        const Assignment & assignment)
{
    if (assignment.size() != inst.variables.size())
        throw std::invalid_argument("assignment is not total on the instance variables");
    std::vector<int> image;
    for (const auto & c : inst.conjuncts) {
        const Relation * r = s.find_relation(c.symbol);
        if (r == nullptr)
            throw std::invalid_argument("unknown relation symbol '" + c.symbol + "'");
        image.clear();
        for (int a : c.args)
            image.push_back(assignment[a]);
        if (! std::binary_search(r->tuples.begin(), r->tuples.end(), image))
            return false;
    }
    for (const auto & [a, b] : inst.equalities)
        if (assignment[a] != assignment[b])
            return false;
    return true;
}

namespace {

    // Constraints grouped by the highest variable they mention, checked as
    // soon as they become fully assigned.
    struct InstanceSearch {
        const PPInstance & inst;
        const RelationalStructure & s;
        SearchBudget & budget;
        std::vector<std::vector<std::pair<const Relation *, const Conjunct *>>> conjuncts_by_max;
        std::vector<std::vector<std::pair<int, int>>> equalities_by_max;
        Assignment assignment;

        InstanceSearch(const PPInstance & i, const RelationalStructure & st, SearchBudget & bu)
            : inst(i), s(st), budget(bu), conjuncts_by_max(i.variables.size()),
              equalities_by_max(i.variables.size()), assignment(i.variables.size(), -1)
        {
            for (const auto & c : inst.conjuncts) {
                const Relation * r = s.find_relation(c.symbol);
                if (r == nullptr)
                    throw std::invalid_argument("unknown relation symbol '" + c.symbol + "'");
                if (r->arity != static_cast<int>(c.args.size()))
                    throw std::invalid_argument("arity mismatch for '" + c.symbol + "'");
                int mx = 0;
                for (int a : c.args)
                    mx = std::max(mx, a);
                conjuncts_by_max[mx].push_back({r, &c});
            }
            for (const auto & [a, b] : inst.equalities)
                equalities_by_max[std::max(a, b)].push_back({a, b});
        }

        bool extend(std::size_t v)
        {
            if (v == inst.variables.size())
                return true;
            std::vector<int> image;
            for (int value = 0; value < s.domain_size; ++value) {
                budget.charge();
                assignment[v] = value;
                bool ok = true;
                for (const auto & [r, c] : conjuncts_by_max[v]) {
                    image.clear();
                    for (int a : c->args)
                        image.push_back(assignment[a]);
                    if (! std::binary_search(r->tuples.begin(), r->tuples.end(), image)) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    for (const auto & [a, b] : equalities_by_max[v])
                        if (assignment[a] != assignment[b]) {
                            ok = false;
                            break;
                        }
                if (ok && extend(v + 1))
                    return true;
            }
            assignment[v] = -1;
            return false;
        }
    };

} // namespace

std::optional<Assignment> brute_force_decide(const PPInstance & inst,
                                             const RelationalStructure & s, SearchBudget * budget)
{
    if (inst.variables.empty()) {
        // Vacuous case: conjuncts cannot mention variables, so the instance
        // is true iff it has no conjuncts over an empty relation. With no
        // variables there are no conjuncts at all in a well-formed instance.
        return Assignment{};
    }
    SearchBudget local;
    InstanceSearch search(inst, s, budget ? *budget : local);
    if (search.extend(0))
        return search.assignment;
    return std::nullopt;
}

PcspResult brute_force_pcsp(const PPInstance & inst, const PcspTemplate & t, SearchBudget * budget)
{
    if (auto yes = brute_force_decide(inst, t.yes, budget))
        return {PcspVerdict::Yes, std::move(yes)};
    if (! brute_force_decide(inst, t.no, budget))
        return {PcspVerdict::No, std::nullopt};
    return {PcspVerdict::Indeterminate, std::nullopt};
}

namespace {

    // Literal node: variable v holding value b is node 2v + b.
    struct TwoSatGraph {
        int num_vars;
        std::vector<std::vector<int>> adj;

        explicit TwoSatGraph(int n) : num_vars(n), adj(2 * n) {}

        // Clause (x != a or y != b): choosing x = a forces y = 1-b and
        // choosing y = b forces x = 1-a.
        void add_forbidden(int x, int a, int y, int b)
        {
            adj[2 * x + a].push_back(2 * y + (1 - b));
            adj[2 * y + b].push_back(2 * x + (1 - a));
        }
    };

    // Iterative Tarjan; component ids increase in reverse topological order
    // (an edge u -> v implies comp[u] >= comp[v]).
    std::vector<int> strongly_connected_components(const std::vector<std::vector<int>> & adj)
    {
        const int n = static_cast<int>(adj.size());
        std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
        std::vector<bool> on_stack(n, false);
        int next_index = 0, next_comp = 0;

        struct Frame {
            int node;
            std::size_t edge;
        };
        for (int start = 0; start < n; ++start) {
            if (index[start] != -1)
                continue;
            std::vector<Frame> frames{{start, 0}};
            index[start] = low[start] = next_index++;
            stack.push_back(start);
            on_stack[start] = true;
            while (! frames.empty()) {
                auto & [node, edge] = frames.back();
                if (edge < adj[node].size()) {
                    int next = adj[node][edge++];
                    if (index[next] == -1) {
                        index[next] = low[next] = next_index++;
                        stack.push_back(next);
                        on_stack[next] = true;
                        frames.push_back({next, 0});
                    }
                    else if (on_stack[next]) {
                        low[node] = std::min(low[node], index[next]);
                    }
                    continue;
                }
                if (low[node] == index[node]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if (w == node)
                            break;
                    }
                    ++next_comp;
                }
                int finished = node;
                frames.pop_back();
                if (! frames.empty())
                    low[frames.back().node] = std::min(low[frames.back().node], low[finished]);
            }
        }
        return comp;
    }

} // namespace

std::optional<Assignment> solve_2sat(const PPInstance & inst)
{
    const int n = static_cast<int>(inst.variables.size());
    TwoSatGraph graph(n);
    for (const auto & c : inst.conjuncts) {
        if (c.symbol.size() != 4 || c.symbol.compare(0, 2, "R_") != 0 ||
            (c.symbol[2] != '0' && c.symbol[2] != '1') ||
            (c.symbol[3] != '0' && c.symbol[3] != '1') || c.args.size() != 2)
            throw std::invalid_argument("solve_2sat: conjunct '" + c.symbol +
                                        "' is not an R_ab relation of the 2sat structure");
        int a = c.symbol[2] - '0';
        int b = c.symbol[3] - '0';
        graph.add_forbidden(c.args[0], a, c.args[1], b);
    }
    // Equality x = y: holding value v on one side forces v on the other.
    for (const auto & [x, y] : inst.equalities)
        for (int v = 0; v < 2; ++v) {
            graph.adj[2 * x + v].push_back(2 * y + v);
            graph.adj[2 * y + v].push_back(2 * x + v);
        }

    auto comp = strongly_connected_components(graph.adj);
    Assignment assignment(n);
    for (int v = 0; v < n; ++v) {
        if (comp[2 * v] == comp[2 * v + 1])
            return std::nullopt;
        // Pick the literal later in implication order (smaller component id):
        // if value b implies value 1-b, comp[2v+b] >= comp[2v+1-b] and we
        // must pick 1-b.
        assignment[v] = comp[2 * v + 1] < comp[2 * v] ? 1 : 0;
    }
    return assignment;
}

ModPSystem lin_instance_to_system(const PPInstance & inst, const RelationalStructure & lin)
{
    ModPSystem sys;
    sys.p = lin.domain_size;
    if (! is_prime(sys.p))
        throw std::invalid_argument("lin_instance_to_system: domain size is not prime");
    sys.num_vars = static_cast<int>(inst.variables.size());

    for (const auto & c : inst.conjuncts) {
        if (lin.find_relation(c.symbol) == nullptr)
            throw std::invalid_argument("conjunct symbol '" + c.symbol +
                                        "' is not a relation of the lin structure");
        if (c.symbol.compare(0, 2, "L_") != 0)
            throw std::invalid_argument("conjunct symbol '" + c.symbol +
                                        "' does not carry lin coefficients");
        // L_abcd compactly for p <= 7, L_a_b_c_d beyond.
        std::vector<int> abcd;
        std::string rest = c.symbol.substr(2);
        if (rest.find('_') != std::string::npos) {
            std::size_t start = 0;
            while (start <= rest.size()) {
                auto next = rest.find('_', start);
                abcd.push_back(std::stoi(rest.substr(start, next - start)));
                if (next == std::string::npos)
                    break;
                start = next + 1;
            }
        }
        else {
            for (char ch : rest)
                abcd.push_back(ch - '0');
        }
        if (abcd.size() != 4)
            throw std::invalid_argument("malformed lin relation symbol '" + c.symbol + "'");

        std::vector<int> row(sys.num_vars, 0);
        for (int i = 0; i < 3; ++i)
            row[c.args[i]] = (row[c.args[i]] + abcd[i]) % sys.p;
        sys.rows.emplace_back(std::move(row), abcd[3]);
    }
    return sys;
}

RationalLinearSystem build_1in3_system(const PPInstance & inst)
{
    RationalLinearSystem sys;
    sys.num_vars = static_cast<int>(inst.variables.size());
    for (const auto & c : inst.conjuncts) {
        if (c.args.size() != 3)
            throw std::invalid_argument("build_1in3_system: conjunct '" + c.symbol +
                                        "' is not ternary");
        std::vector<Rational> row(sys.num_vars, Rational(0));
        for (int a : c.args)
            row[a] += 1; // repeated variables accumulate multiplicity
        sys.rows.emplace_back(std::move(row), Rational(1));
    }
    return sys;
}

std::vector<Rational> solve_1in3_rational_point(const PPInstance & inst)
{
    if (! inst.equalities.empty())
        throw std::invalid_argument("solve_1in3_nae expects a normalized instance");
    auto system = build_1in3_system(inst);
    auto solution = eliminate_rational(system);
    if (! solution)
        throw PromiseViolationError("the rational system is inconsistent; the instance has no "
                                    "one-in-three assignment");
    auto point = avoid_third(*solution);
    if (! point)
        throw PromiseViolationError("some variable is forced to 1/3; the instance has no "
                                    "one-in-three assignment");
    return *point;
}

Assignment solve_1in3_nae(const PPInstance & inst)
{
    auto point = solve_1in3_rational_point(inst);
    const Rational third = one_third();
    Assignment assignment(point.size());
    for (std::size_t i = 0; i < point.size(); ++i)
        assignment[i] = point[i] > third ? 1 : 0;

    // The correctness claim is that thresholding yields a not-all-equal
    // coloring; verify before returning.
    for (const auto & c : inst.conjuncts) {
        int first = assignment[c.args[0]];
        bool constant = true;
        for (int a : c.args)
            if (assignment[a] != first)
                constant = false;
        if (constant)
            throw PromiseViolationError("rounded assignment is constant on a hyperedge; the "
                                        "input violated the promise");
    }
    return assignment;
}

} // namespace pcsp
