#include "chordalnet/cnf.hpp"

#include <algorithm>

#include "chordalnet/errors.hpp"

namespace chordalnet {

Lit CnfBuilder::new_aux(AuxDef::Kind kind, std::span<const Lit> inputs, int i_param,
                        int j_param) {
    Lit v = new_var();
    AuxDef d;
    d.kind = kind;
    d.var = v;
    d.in_begin = static_cast<std::uint32_t>(aux_inputs.size());
    d.in_count = static_cast<std::uint32_t>(inputs.size());
    d.i_param = i_param;
    d.j_param = j_param;
    aux_inputs.insert(aux_inputs.end(), inputs.begin(), inputs.end());
    aux.push_back(d);
    return v;
}

// Exact unary counter: cell (i, j) is a literal equivalent to "at least j
// of the first i inputs hold". The first cell aliases the input literal;
// the rest are fresh variables constrained in both directions, so their
// values are forced once the inputs are fixed.
CounterOutputs sequential_counter(CnfBuilder& b, std::span<const Lit> inputs, int bound) {
    const int len = static_cast<int>(inputs.size());
    bound = std::min(bound, len);
    CounterOutputs out;
    if (len == 0 || bound <= 0) return out;

    // prev[j-1] = cell (i-1, j)
    std::vector<Lit> prev;
    prev.push_back(inputs[0]); // cell (1,1) is the literal itself
    for (int i = 2; i <= len; ++i) {
        const Lit y = inputs[static_cast<std::size_t>(i - 1)];
        const int width = std::min(i, bound);
        std::vector<Lit> cur(static_cast<std::size_t>(width));
        for (int j = 1; j <= width; ++j) {
            const bool has_a = j <= static_cast<int>(prev.size()); // cell (i-1, j)
            const Lit a = has_a ? prev[static_cast<std::size_t>(j - 1)] : 0;
            const bool c_true = (j == 1);                          // cell (i-1, 0)
            const Lit c = c_true ? 0 : prev[static_cast<std::size_t>(j - 2)];

            Lit u = b.new_aux(AuxDef::Kind::CountGe, inputs, i, j);
            cur[static_cast<std::size_t>(j - 1)] = u;
            // u <-> a | (y & c)
            if (has_a) b.clauses.add({-a, u});
            if (c_true)
                b.clauses.add({-y, u});
            else
                b.clauses.add({-y, -c, u});
            if (has_a)
                b.clauses.add({-u, a, y});
            else
                b.clauses.add({-u, y});
            if (!c_true) {
                if (has_a)
                    b.clauses.add({-u, a, c});
                else
                    b.clauses.add({-u, c});
            }
        }
        prev = std::move(cur);
    }
    out.row = std::move(prev);
    return out;
}

void encode_cardinality(CnfBuilder& b, std::span<const Lit> left,
                        std::span<const Lit> right, int constant) {
    if (constant < 0) {
        encode_cardinality(b, right, left, -constant);
        return;
    }
    const int nl = static_cast<int>(left.size());
    const int nr = static_cast<int>(right.size());
    if (nl < constant) {
        b.clauses.add(std::initializer_list<Lit>{}); // unsatisfiable bound
        return;
    }

    const int bound_l = std::min(nl, constant + nr + 1);
    const int bound_r = std::min(nr, nl - constant + 1);
    CounterOutputs u = sequential_counter(b, left, bound_l);
    CounterOutputs w = sequential_counter(b, right, bound_r);

    auto ul = [&](int j) { return u.row[static_cast<std::size_t>(j - 1)]; };
    auto wr = [&](int j) { return w.row[static_cast<std::size_t>(j - 1)]; };

    if (constant >= 1) b.clauses.add({ul(constant)});
    if (nl > constant + nr) b.clauses.add({-ul(constant + nr + 1)});
    const int link = std::min(nr, nl - constant);
    for (int j = 1; j <= link; ++j) {
        b.clauses.add({-wr(j), ul(constant + j)});
        b.clauses.add({-ul(constant + j), wr(j)});
    }
    if (nr > nl - constant) b.clauses.add({-wr(nl - constant + 1)});
}

bool clause_satisfied(std::span<const Lit> clause, const Assignment& a) {
    for (Lit l : clause)
        if (a.lit(l)) return true;
    return false;
}

void derive_aux_defs(std::span<const AuxDef> defs, std::span<const Lit> arena,
                     Assignment& a) {
    // CountGe defs of one counter share an input span and arrive with
    // nondecreasing prefix length; keep a running count instead of
    // rescanning the prefix.
    std::uint32_t run_begin = ~std::uint32_t{0};
    int run_len = 0;
    int run_count = 0;
    for (const AuxDef& d : defs) {
        std::span<const Lit> in{arena.data() + d.in_begin, d.in_count};
        bool val = false;
        switch (d.kind) {
            case AuxDef::Kind::CountGe: {
                if (d.in_begin != run_begin || d.i_param < run_len) {
                    run_begin = d.in_begin;
                    run_len = 0;
                    run_count = 0;
                }
                while (run_len < d.i_param) {
                    if (a.lit(in[static_cast<std::size_t>(run_len)])) ++run_count;
                    ++run_len;
                }
                val = run_count >= d.j_param;
                break;
            }
            case AuxDef::Kind::AndNot:
                val = a.lit(in[0]) && !a.lit(in[1]);
                break;
            case AuxDef::Kind::OrPrefix: {
                for (int i = 0; i < d.i_param; ++i)
                    if (a.lit(in[static_cast<std::size_t>(i)])) {
                        val = true;
                        break;
                    }
                break;
            }
            case AuxDef::Kind::AtMostOne: {
                int cnt = 0;
                for (Lit l : in)
                    if (a.lit(l) && ++cnt > 1) break;
                val = cnt <= 1;
                break;
            }
        }
        a.set_var(d.var, val);
    }
}

void encode_conditional_amo(CnfBuilder& b, Lit condition, std::span<const Lit> lits) {
    const int n = static_cast<int>(lits.size());
    if (n <= 1) return;
    // Sinz registers r_i = "some of lits[0..i] holds"; only the conflict
    // clause carries the condition.
    Lit r_prev = 0;
    for (int i = 0; i < n; ++i) {
        const Lit y = lits[static_cast<std::size_t>(i)];
        if (i > 0) b.clauses.add({-condition, -y, -r_prev});
        if (i < n - 1) {
            Lit r = b.new_aux(AuxDef::Kind::OrPrefix, lits, i + 1, 0);
            b.clauses.add({-y, r});
            if (r_prev != 0) b.clauses.add({-r_prev, r});
            r_prev = r;
        }
    }
}

} // namespace chordalnet
