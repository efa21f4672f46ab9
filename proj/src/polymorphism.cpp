#include "pcsp/polymorphism.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcsp {

namespace {

    // Membership tester over the out-domain: a bitmap when the tuple space is
    // small, binary search over the sorted tuple list otherwise.
    class RelationIndex {
    public:
        RelationIndex(const Relation & r, int domain) : relation_(&r), domain_(domain)
        {
            std::uint64_t space = 1;
            bool small = true;
            for (int i = 0; i < r.arity; ++i) {
                space *= static_cast<std::uint64_t>(domain);
                if (space > (1u << 22)) {
                    small = false;
                    break;
                }
            }
            if (small) {
                bitmap_.assign(space, 0);
                for (const auto & t : r.tuples)
                    bitmap_[encode(t.data(), static_cast<int>(t.size()))] = 1;
            }
        }

        bool contains(const int * t, int size) const
        {
            if (! bitmap_.empty())
                return bitmap_[encode(t, size)] != 0;
            scratch_.assign(t, t + size);
            return std::binary_search(relation_->tuples.begin(), relation_->tuples.end(), scratch_);
        }

        bool contains(const std::vector<int> & t) const
        {
            return contains(t.data(), static_cast<int>(t.size()));
        }

    private:
        std::uint64_t encode(const int * t, int size) const
        {
            std::uint64_t idx = 0;
            for (int i = 0; i < size; ++i)
                idx = idx * static_cast<std::uint64_t>(domain_) + static_cast<std::uint64_t>(t[i]);
            return idx;
        }

        const Relation * relation_;
        int domain_;
        std::vector<std::uint8_t> bitmap_;
        mutable std::vector<int> scratch_;
    };

    void check_relation_entries(const Relation & r, int domain, const char * side)
    {
        for (const auto & t : r.tuples)
            for (int e : t)
                if (e < 0 || e >= domain)
                    throw std::invalid_argument(std::string("is_compatible: ") + side +
                                                " relation entry outside the function's domain");
    }

} // namespace

bool is_compatible(const FunctionTable & f, const Relation & ra, const Relation & rb,
                   SearchBudget * budget)
{
    if (ra.arity != rb.arity)
        throw std::invalid_argument("is_compatible: relation arities differ");
    check_relation_entries(ra, f.in_domain(), "input");
    check_relation_entries(rb, f.out_domain(), "output");

    const int k = f.arity();
    const int m = ra.arity;
    const std::size_t q = ra.tuples.size();
    RelationIndex rb_index(rb, f.out_domain());

    if (k == 0) {
        // The single empty column choice: the image row is constant.
        std::vector<int> image(m, f.table()[0]);
        return rb_index.contains(image);
    }
    if (q == 0)
        return true;

    SearchBudget local;
    SearchBudget & bu = budget ? *budget : local;

    std::vector<std::size_t> choice(k, 0);
    std::vector<int> row(k), image(m);
    while (true) {
        bu.charge();
        for (int p = 0; p < m; ++p) {
            for (int j = 0; j < k; ++j)
                row[j] = ra.tuples[choice[j]][p];
            image[p] = f.apply(row);
        }
        if (! rb_index.contains(image))
            return false;
        int j = k - 1;
        while (j >= 0 && choice[j] == q - 1)
            choice[j--] = 0;
        if (j < 0)
            break;
        ++choice[j];
    }
    return true;
}

bool is_polymorphism(const FunctionTable & f, const PcspTemplate & t, SearchBudget * budget)
{
    if (f.in_domain() != t.yes.domain_size || f.out_domain() != t.no.domain_size)
        throw std::invalid_argument("is_polymorphism: function domains do not match the template");
    for (std::size_t i = 0; i < t.yes.relations.size(); ++i)
        if (! is_compatible(f, t.yes.relations[i], t.no.relations[i], budget))
            return false;
    return true;
}

bool is_polymorphism(const FunctionTable & f, const RelationalStructure & a, SearchBudget * budget)
{
    if (f.in_domain() != a.domain_size || f.out_domain() != a.domain_size)
        throw std::invalid_argument("is_polymorphism: function domains do not match the structure");
    for (const auto & r : a.relations)
        if (! is_compatible(f, r, r, budget))
            return false;
    return true;
}

namespace {

    // Column choices flattened into the table cells they read. A choice's
    // image becomes fully determined exactly when its maximum cell is
    // assigned (cells are filled in increasing index order), so grouping by
    // maximum cell checks every choice as early as possible and exactly once
    // per assignment.
    struct ChoiceTable {
        std::vector<std::uint32_t> cells;      // concatenated per-choice cell lists
        std::vector<std::uint32_t> cell_off;   // choice id -> offset into cells
        std::vector<std::uint32_t> rel;        // choice id -> relation pair index
        std::vector<std::uint32_t> by_max_off; // cell -> group offset into by_max
        std::vector<std::uint32_t> by_max;     // choice ids grouped by max cell
    };

    ChoiceTable build_choices(const RelationalStructure & yes, int arity, std::uint64_t num_cells,
                              SearchBudget & budget)
    {
        ChoiceTable ct;
        std::vector<std::uint32_t> max_cell_of;
        const int domain = yes.domain_size;

        for (std::size_t ri = 0; ri < yes.relations.size(); ++ri) {
            const Relation & ra = yes.relations[ri];
            const int m = ra.arity;
            const std::size_t q = ra.tuples.size();
            if (arity > 0 && q == 0)
                continue;

            std::vector<std::size_t> choice(arity, 0);
            while (true) {
                budget.charge();
                ct.cell_off.push_back(static_cast<std::uint32_t>(ct.cells.size()));
                std::uint32_t mx = 0;
                for (int p = 0; p < m; ++p) {
                    std::uint64_t cell = 0;
                    for (int j = 0; j < arity; ++j)
                        cell = cell * static_cast<std::uint64_t>(domain) +
                               static_cast<std::uint64_t>(ra.tuples[choice[j]][p]);
                    ct.cells.push_back(static_cast<std::uint32_t>(cell));
                    mx = std::max(mx, static_cast<std::uint32_t>(cell));
                }
                ct.rel.push_back(static_cast<std::uint32_t>(ri));
                max_cell_of.push_back(mx);

                int j = arity - 1;
                while (j >= 0 && choice[j] == q - 1)
                    choice[j--] = 0;
                if (j < 0)
                    break;
                ++choice[j];
            }
        }

        // Counting sort of choice ids by max cell.
        ct.by_max_off.assign(num_cells + 1, 0);
        for (auto mx : max_cell_of)
            ++ct.by_max_off[mx + 1];
        for (std::size_t c = 1; c <= num_cells; ++c)
            ct.by_max_off[c] += ct.by_max_off[c - 1];
        ct.by_max.resize(max_cell_of.size());
        std::vector<std::uint32_t> cursor(ct.by_max_off.begin(), ct.by_max_off.end() - 1);
        for (std::uint32_t id = 0; id < max_cell_of.size(); ++id)
            ct.by_max[cursor[max_cell_of[id]]++] = id;
        return ct;
    }

} // namespace

void enumerate_polymorphisms(const PcspTemplate & t, int arity,
                             const std::function<bool(const FunctionTable &)> & visit,
                             SearchBudget * budget)
{
    if (arity < 0)
        throw std::invalid_argument("enumerate_polymorphisms: negative arity");
    SearchBudget local;
    SearchBudget & bu = budget ? *budget : local;

    const int in_domain = t.yes.domain_size;
    const int out_domain = t.no.domain_size;
    const std::uint64_t num_cells = table_size(in_domain, arity); // always >= 1

    std::vector<RelationIndex> rb_index;
    rb_index.reserve(t.no.relations.size());
    for (const auto & r : t.no.relations)
        rb_index.emplace_back(r, out_domain);

    const ChoiceTable ct = build_choices(t.yes, arity, num_cells, bu);

    std::vector<int> table(num_cells, 0);
    std::vector<int> image;
    image.reserve(16);

    auto consistent_at = [&](std::uint64_t c) {
        for (std::uint32_t gi = ct.by_max_off[c]; gi < ct.by_max_off[c + 1]; ++gi) {
            const std::uint32_t id = ct.by_max[gi];
            const std::uint32_t ri = ct.rel[id];
            const int m = t.yes.relations[ri].arity;
            const std::uint32_t * cs = ct.cells.data() + ct.cell_off[id];
            image.assign(m, 0);
            for (int p = 0; p < m; ++p)
                image[p] = table[cs[p]];
            if (! rb_index[ri].contains(image.data(), m))
                return false;
        }
        return true;
    };

    std::uint64_t c = 0;
    table[0] = 0;
    while (true) {
        bu.charge();
        bool advance = true;
        if (consistent_at(c)) {
            if (c + 1 == num_cells) {
                if (! visit(FunctionTable(in_domain, out_domain, arity, table)))
                    return;
            }
            else {
                ++c;
                table[c] = 0;
                advance = false;
            }
        }
        if (advance) {
            while (true) {
                if (table[c] + 1 < out_domain) {
                    ++table[c];
                    break;
                }
                if (c == 0)
                    return;
                --c;
            }
        }
    }
}

std::vector<FunctionTable> all_polymorphisms(const PcspTemplate & t, int arity,
                                             SearchBudget * budget)
{
    std::vector<FunctionTable> out;
    enumerate_polymorphisms(t, arity, [&](const FunctionTable & f) {
        out.push_back(f);
        return true;
    }, budget);
    return out;
}

} // namespace pcsp
