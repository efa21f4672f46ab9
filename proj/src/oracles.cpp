#include "pcsp/oracles.hpp"

#include <stdexcept>

namespace pcsp {

std::vector<FunctionTable> all_tables(int in_domain, int out_domain, int arity, std::uint64_t cap)
{
    const std::uint64_t cells = table_size(in_domain, arity);
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < cells; ++i) {
        count *= static_cast<std::uint64_t>(out_domain);
        if (count > cap)
            throw std::invalid_argument("all_tables: " + std::to_string(out_domain) + "^" +
                                        std::to_string(cells) + " tables exceed the cap");
    }

    std::vector<FunctionTable> out;
    out.reserve(count);
    std::vector<int> table(cells, 0);
    while (true) {
        out.emplace_back(in_domain, out_domain, arity, table);
        std::int64_t i = static_cast<std::int64_t>(cells) - 1;
        while (i >= 0 && table[i] == out_domain - 1)
            table[i--] = 0;
        if (i < 0)
            break;
        ++table[i];
    }
    return out;
}

std::vector<FunctionTable> polymorphisms_by_filter(const PcspTemplate & t, int arity,
                                                   std::uint64_t cap)
{
    std::vector<FunctionTable> out;
    for (auto & f : all_tables(t.yes.domain_size, t.no.domain_size, arity, cap))
        if (is_polymorphism(f, t))
            out.push_back(std::move(f));
    return out;
}

std::optional<Interpretation> find_interpretation_exhaustive(const MinorCondition & c,
                                                             const PcspTemplate & t,
                                                             std::uint64_t cap)
{
    Interpretation interp;
    interp.in_domain = t.yes.domain_size;
    interp.out_domain = t.no.domain_size;
    if (c.symbols.empty())
        return interp;

    std::vector<std::vector<FunctionTable>> candidates;
    for (const auto & s : c.symbols) {
        candidates.push_back(polymorphisms_by_filter(t, s.arity, cap));
        if (candidates.back().empty())
            return std::nullopt;
    }

    std::vector<std::size_t> pick(c.symbols.size(), 0);
    while (true) {
        interp.tables.clear();
        for (std::size_t i = 0; i < c.symbols.size(); ++i)
            interp.tables.emplace(c.symbols[i].name, candidates[i][pick[i]]);
        if (satisfies(c, interp))
            return interp;
        std::int64_t i = static_cast<std::int64_t>(pick.size()) - 1;
        while (i >= 0 && pick[i] + 1 == candidates[i].size())
            pick[i--] = 0;
        if (i < 0)
            break;
        ++pick[i];
    }
    return std::nullopt;
}

} // namespace pcsp
