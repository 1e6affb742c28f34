#ifndef CHORDALNET_CNF_HPP
#define CHORDALNET_CNF_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace chordalnet {

// DIMACS-style literal: variable id v > 0, literal +v or -v.
using Lit = std::int32_t;

// Flat clause arena; a clause is a span of literals. An empty clause is
// permitted and is unsatisfiable.
class ClauseList {
public:
    std::size_t size() const { return offsets_.size() - 1; }
    std::span<const Lit> operator[](std::size_t i) const {
        return {lits_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::size_t total_literals() const { return lits_.size(); }

    void add(std::span<const Lit> lits) {
        lits_.insert(lits_.end(), lits.begin(), lits.end());
        offsets_.push_back(lits_.size());
    }
    void add(std::initializer_list<Lit> lits) { add(std::span<const Lit>(lits.begin(), lits.size())); }

private:
    std::vector<Lit> lits_;
    std::vector<std::size_t> offsets_ = {0};
};

// Total truth assignment, indexed by variable id.
struct Assignment {
    std::vector<std::uint8_t> value; // value[0] unused

    explicit Assignment(int var_count = 0)
        : value(static_cast<std::size_t>(var_count) + 1, 0) {}

    bool var(int v) const { return value[static_cast<std::size_t>(v)] != 0; }
    bool lit(Lit l) const { return l > 0 ? var(l) : !var(-l); }
    void set_var(int v, bool b) { value[static_cast<std::size_t>(v)] = b ? 1 : 0; }
    void set_lit(Lit l, bool b) { set_var(l > 0 ? l : -l, l > 0 ? b : !b); }
};

bool clause_satisfied(std::span<const Lit> clause, const Assignment& a);

// Semantic definition of one auxiliary variable, kept so that assignments
// over the structural variables can be extended to the full encoding
// without re-deriving circuit internals by hand.
struct AuxDef {
    enum class Kind : std::uint8_t {
        CountGe,  // true iff >= j of the first i input literals hold
        AndNot,   // inputs = {a, b}: a AND NOT b
        OrPrefix, // true iff any of the first i input literals holds
        AtMostOne // true iff at most one input literal holds
    };
    Kind kind;
    Lit var;                // the defined variable (positive id)
    std::uint32_t in_begin; // slice of CnfBuilder::aux_inputs
    std::uint32_t in_count;
    int i_param = 0;
    int j_param = 0;
};

// Variable allocator + clause sink + aux bookkeeping shared by the
// cardinality circuits and the encoder.
struct CnfBuilder {
    int var_count = 0;
    ClauseList clauses;
    std::vector<AuxDef> aux;         // in derivation order (creation order)
    std::vector<Lit> aux_inputs;     // shared input arena for AuxDef slices

    Lit new_var() { return ++var_count; }
    Lit new_aux(AuxDef::Kind kind, std::span<const Lit> inputs, int i_param, int j_param);

    std::span<const Lit> aux_input_span(const AuxDef& d) const {
        return {aux_inputs.data() + d.in_begin, d.in_count};
    }
};

// Unary counter outputs: row[j-1] is a literal equivalent to
// "at least j of the inputs are true", for j = 1..bound.
struct CounterOutputs {
    std::vector<Lit> row;
};

// Sequential counter over `inputs`, exact in both directions up to `bound`.
CounterOutputs sequential_counter(CnfBuilder& b, std::span<const Lit> inputs, int bound);

// count(left) = constant + count(right), compiled to clauses. An
// unsatisfiable constant emits the empty clause instead of failing.
// A negative constant swaps the sides.
void encode_cardinality(CnfBuilder& b, std::span<const Lit> left,
                        std::span<const Lit> right, int constant);

// condition -> at most one of `lits` holds (Sinz-style registers).
void encode_conditional_amo(CnfBuilder& b, Lit condition, std::span<const Lit> lits);

// Fill auxiliary variables from their semantic definitions, in order; every
// definition may reference only inputs and previously defined variables.
void derive_aux_defs(std::span<const AuxDef> defs, std::span<const Lit> arena,
                     Assignment& a);

} // namespace chordalnet

#endif
