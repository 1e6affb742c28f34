#ifndef CHORDALNET_ENCODER_HPP
#define CHORDALNET_ENCODER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chordalnet/chordal.hpp"
#include "chordalnet/cnf.hpp"
#include "chordalnet/nodeset.hpp"
#include "chordalnet/scoring.hpp"

namespace chordalnet {

// Bijections from logical variables to DIMACS ids. Numbering is contiguous
// from 1 and a deterministic function of (n_vars, cap).
struct VarMap {
    int n_vars = 0;
    int cap = 0;
    std::vector<NodeSet> candidates;             // canonical subset order
    std::vector<Lit> x;                          // x[c]: candidate c chosen
    std::vector<Lit> e;                          // e[pair]: edge in a chosen clique
    std::vector<std::pair<int, int>> sep_pairs;  // candidate index pairs, i < j, intersecting
    std::vector<Lit> s;                          // s[p]: sep_pairs[p] is a forest edge
    std::vector<std::vector<Lit>> leaf;          // leaf[c][level]

    std::unordered_map<std::uint32_t, int> candidate_index;
    std::unordered_map<std::uint64_t, int> sep_pair_index; // key (i << 32) | j

    int pair_index(int i, int j) const; // node pair -> position in pair_list order
    Lit e_var(int i, int j) const { return e[static_cast<std::size_t>(pair_index(i, j))]; }
    int candidate_of(NodeSet c) const;  // -1 when not a candidate
    int sep_index(int ci, int cj) const; // -1 when the pair has no s variable
};

enum class Section : int {
    coverage = 0,
    antichain,
    edge_def,
    non_extend,
    chordality,
    sep_support,
    balancing,
    acyclicity,
    kCount
};

const char* section_name(Section s);

struct Encoding {
    VarMap vars;
    ClauseList hard;
    ClauseList soft;
    std::vector<std::int64_t> soft_weight;     // parallel to soft
    std::int64_t offset = 0;                   // objective = offset - falsified soft cost
    std::int64_t scale = 1;                    // carried from the score table
    std::array<std::pair<std::uint32_t, std::uint32_t>,
               static_cast<std::size_t>(Section::kCount)> sections{}; // [begin,end) into hard
    std::vector<AuxDef> aux;                   // aux defs in derivation order
    std::vector<Lit> aux_inputs;               // arena referenced by aux defs
    int var_count = 0;

    std::span<const Lit> aux_input_span(const AuxDef& d) const {
        return {aux_inputs.data() + d.in_begin, d.in_count};
    }
    std::pair<std::uint32_t, std::uint32_t> section_range(Section s) const {
        return sections[static_cast<std::size_t>(s)];
    }
};

// Translate an integer score table into the weighted MaxSAT instance:
// coverage, antichain, edge definitions, non-extendability, chordality
// cycle constraints, separator support, per-node balancing equalities,
// leaf-level acyclicity, and one soft clause per candidate / separator
// pair. Chordality constraints grow exponentially, hence the node limit.
Encoding build_encoding(const IntScoreTable& table, int node_limit = 10);

// First violated hard clause, as (section, clause index), if any.
std::optional<std::pair<Section, std::uint32_t>> find_violated_hard(const Encoding& enc,
                                                                    const Assignment& a);

// offset - total weight of falsified soft clauses.
std::int64_t objective_of(const Encoding& enc, const Assignment& a);

// Fill every auxiliary variable from its semantic definition, given values
// for the structural variables (x, e, s).
void derive_aux(const Encoding& enc, Assignment& a);

// Assignment encoding a known network: x/e/s from the network, auxiliaries
// at their forced values.
Assignment canonical_assignment(const ChordalNetwork& net, const Encoding& enc);

struct DecodedNetwork {
    ChordalNetwork network; // score = objective / scale
    std::int64_t objective = 0;
};

// Read a model back into a network and re-verify it through the chordal
// module; fails loudly on any violation rather than trusting the encoding.
DecodedNetwork decode_model(const Encoding& enc, const Assignment& a,
                            const IntScoreTable& table);

// Classic DIMACS WCNF, hard clauses first, top = sum of soft weights + 1.
std::string emit_wcnf(const Encoding& enc);

// Sidecar map: `x <id> <k> <i_1>..<i_k>` and `s <id> <ci> <cj>` lines, so
// third-party models can be decoded offline.
std::string emit_varmap(const Encoding& enc);

} // namespace chordalnet

#endif
