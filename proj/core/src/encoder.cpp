#include "chordalnet/encoder.hpp"

#include <algorithm>
#include <charconv>

#include "chordalnet/errors.hpp"

namespace chordalnet {

namespace {

constexpr std::uint64_t pair_key(int i, int j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

void append_int(std::string& out, std::int64_t v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, ptr);
}

} // namespace

const char* section_name(Section s) {
    switch (s) {
        case Section::coverage: return "coverage";
        case Section::antichain: return "antichain";
        case Section::edge_def: return "edge-definition";
        case Section::non_extend: return "non-extendability";
        case Section::chordality: return "chordality";
        case Section::sep_support: return "separator-support";
        case Section::balancing: return "balancing";
        case Section::acyclicity: return "acyclicity";
        default: return "?";
    }
}

int VarMap::pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * (2 * n_vars - i - 1) / 2 + (j - i - 1);
}

int VarMap::candidate_of(NodeSet c) const {
    auto it = candidate_index.find(c.mask());
    return it == candidate_index.end() ? -1 : it->second;
}

int VarMap::sep_index(int ci, int cj) const {
    if (ci > cj) std::swap(ci, cj);
    auto it = sep_pair_index.find(pair_key(ci, cj));
    return it == sep_pair_index.end() ? -1 : it->second;
}

namespace {

struct SectionGuard {
    Encoding& enc;
    Section sec;
    SectionGuard(Encoding& e, Section s) : enc(e), sec(s) {
        enc.sections[static_cast<std::size_t>(sec)].first =
            static_cast<std::uint32_t>(enc.hard.size());
    }
    ~SectionGuard() {
        enc.sections[static_cast<std::size_t>(sec)].second =
            static_cast<std::uint32_t>(enc.hard.size());
    }
};

} // namespace

Encoding build_encoding(const IntScoreTable& table, int node_limit) {
    const int n = table.n_vars();
    if (n > node_limit)
        throw InputError("encoding limited to " + std::to_string(node_limit) +
                         " nodes (chordality constraints grow exponentially); got " +
                         std::to_string(n));

    Encoding enc;
    enc.scale = table.scale_factor();
    VarMap& vm = enc.vars;
    vm.n_vars = n;
    vm.cap = table.max_subset_size();
    vm.candidates = canonical_subsets(n, vm.cap);

    CnfBuilder b;

    const int ncand = static_cast<int>(vm.candidates.size());
    vm.x.resize(static_cast<std::size_t>(ncand));
    for (int c = 0; c < ncand; ++c) {
        vm.x[static_cast<std::size_t>(c)] = b.new_var();
        vm.candidate_index.emplace(vm.candidates[static_cast<std::size_t>(c)].mask(), c);
    }

    const std::vector<std::pair<int, int>> pairs = pair_list(n);
    vm.e.resize(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) vm.e[p] = b.new_var();

    for (int i = 0; i < ncand; ++i)
        for (int j = i + 1; j < ncand; ++j)
            if (vm.candidates[static_cast<std::size_t>(i)].intersects(
                    vm.candidates[static_cast<std::size_t>(j)])) {
                vm.sep_pair_index.emplace(pair_key(i, j),
                                          static_cast<int>(vm.sep_pairs.size()));
                vm.sep_pairs.emplace_back(i, j);
            }
    vm.s.resize(vm.sep_pairs.size());
    for (std::size_t p = 0; p < vm.sep_pairs.size(); ++p) vm.s[p] = b.new_var();

    std::vector<Lit> cl; // scratch clause

    // (a) node coverage: each node lies in at least one chosen clique.
    {
        SectionGuard sec(enc, Section::coverage);
        for (int v = 0; v < n; ++v) {
            cl.clear();
            for (int c = 0; c < ncand; ++c)
                if (vm.candidates[static_cast<std::size_t>(c)].contains(v))
                    cl.push_back(vm.x[static_cast<std::size_t>(c)]);
            enc.hard.add(std::span<const Lit>(cl));
        }
    }

    // (b) antichain: a candidate and a strict superset cannot both be chosen.
    {
        SectionGuard sec(enc, Section::antichain);
        for (int i = 0; i < ncand; ++i)
            for (int j = i + 1; j < ncand; ++j)
                if (vm.candidates[static_cast<std::size_t>(i)].proper_subset_of(
                        vm.candidates[static_cast<std::size_t>(j)]))
                    enc.hard.add({-vm.x[static_cast<std::size_t>(i)],
                                  -vm.x[static_cast<std::size_t>(j)]});
    }

    // (c) edge definitions: e_{u,v} <-> some chosen clique contains both.
    {
        SectionGuard sec(enc, Section::edge_def);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [u, v] = pairs[p];
            cl.clear();
            cl.push_back(-vm.e[p]);
            for (int c = 0; c < ncand; ++c) {
                NodeSet cs = vm.candidates[static_cast<std::size_t>(c)];
                if (cs.contains(u) && cs.contains(v)) cl.push_back(vm.x[static_cast<std::size_t>(c)]);
            }
            enc.hard.add(std::span<const Lit>(cl));
            for (std::size_t t = 1; t < cl.size(); ++t)
                enc.hard.add({-cl[t], vm.e[p]});
        }
    }

    // (d) non-extendability: a chosen clique admits no outside node adjacent
    // to all of its members.
    {
        SectionGuard sec(enc, Section::non_extend);
        for (int c = 0; c < ncand; ++c) {
            NodeSet cs = vm.candidates[static_cast<std::size_t>(c)];
            for (int v = 0; v < n; ++v) {
                if (cs.contains(v)) continue;
                cl.clear();
                cl.push_back(-vm.x[static_cast<std::size_t>(c)]);
                cs.for_each([&](int u) { cl.push_back(-vm.e_var(u, v)); });
                enc.hard.add(std::span<const Lit>(cl));
            }
        }
    }

    // (e) chordality: every cycle over every k >= 4 subset needs a chord.
    // Cycles are generated once each: the start is fixed to the smallest
    // member and the second node's index must be lower than the second
    // last node's.
    {
        SectionGuard sec(enc, Section::chordality);
        std::vector<NodeSet> subsets = canonical_subsets(n, n);
        for (NodeSet sset : subsets) {
            const int k = sset.size();
            if (k < 4) continue;
            std::vector<int> ms = sset.members();
            const int start = ms[0];
            std::vector<int> rest(ms.begin() + 1, ms.end());
            std::sort(rest.begin(), rest.end());
            do {
                if (rest.front() > rest.back()) continue;
                cl.clear();
                std::vector<int> cycle;
                cycle.reserve(static_cast<std::size_t>(k));
                cycle.push_back(start);
                cycle.insert(cycle.end(), rest.begin(), rest.end());
                for (int t = 0; t < k; ++t)
                    cl.push_back(-vm.e_var(cycle[static_cast<std::size_t>(t)],
                                           cycle[static_cast<std::size_t>((t + 1) % k)]));
                // chords: subset pairs not consecutive on the cycle
                for (int a = 0; a < k; ++a)
                    for (int bidx = a + 2; bidx < k; ++bidx) {
                        if (a == 0 && bidx == k - 1) continue; // closing edge
                        cl.push_back(vm.e_var(cycle[static_cast<std::size_t>(a)],
                                              cycle[static_cast<std::size_t>(bidx)]));
                    }
                enc.hard.add(std::span<const Lit>(cl));
            } while (std::next_permutation(rest.begin(), rest.end()));
        }
    }

    // (f) separator support: an s edge requires both endpoint cliques.
    {
        SectionGuard sec(enc, Section::sep_support);
        for (std::size_t p = 0; p < vm.sep_pairs.size(); ++p) {
            enc.hard.add({-vm.s[p], vm.x[static_cast<std::size_t>(vm.sep_pairs[p].first)]});
            enc.hard.add({-vm.s[p], vm.x[static_cast<std::size_t>(vm.sep_pairs[p].second)]});
        }
    }

    // The cardinality circuits write into b.clauses; splice them into the
    // hard list per section.
    auto splice = [&](ClauseList& from) {
        for (std::size_t i = 0; i < from.size(); ++i) enc.hard.add(from[i]);
        from = ClauseList();
    };

    // (g) balancing: per node, chosen-clique occurrences = 1 + separator
    // occurrences.
    {
        SectionGuard sec(enc, Section::balancing);
        for (int v = 0; v < n; ++v) {
            std::vector<Lit> left, right;
            for (int c = 0; c < ncand; ++c)
                if (vm.candidates[static_cast<std::size_t>(c)].contains(v))
                    left.push_back(vm.x[static_cast<std::size_t>(c)]);
            for (std::size_t p = 0; p < vm.sep_pairs.size(); ++p) {
                NodeSet label = vm.candidates[static_cast<std::size_t>(vm.sep_pairs[p].first)] &
                                vm.candidates[static_cast<std::size_t>(vm.sep_pairs[p].second)];
                if (label.contains(v)) right.push_back(vm.s[p]);
            }
            encode_cardinality(b, left, right, 1);
            splice(b.clauses);
        }
    }

    // (h) acyclicity of the separator graph via leaf levels: every candidate
    // must be a leaf at level floor(m/2); unchosen candidates are isolated
    // and already level-0 leaves. m is the number of cliques that can be
    // chosen at once: the non-extendability and chordality constraints make
    // every chosen candidate a maximal clique of the chordal edge union, and
    // a chordal graph on n nodes has at most n of those.
    {
        SectionGuard sec(enc, Section::acyclicity);
        const int levels = std::min(ncand, n) / 2;
        vm.leaf.assign(static_cast<std::size_t>(ncand), {});

        std::vector<std::vector<std::pair<int, Lit>>> partners(
            static_cast<std::size_t>(ncand)); // (other candidate, s lit)
        for (std::size_t p = 0; p < vm.sep_pairs.size(); ++p) {
            auto [i, j] = vm.sep_pairs[p];
            partners[static_cast<std::size_t>(i)].emplace_back(j, vm.s[p]);
            partners[static_cast<std::size_t>(j)].emplace_back(i, vm.s[p]);
        }

        for (int c = 0; c < ncand; ++c) {
            std::vector<Lit> slits;
            for (auto& [other, slit] : partners[static_cast<std::size_t>(c)])
                slits.push_back(slit);
            Lit leaf = b.new_aux(AuxDef::Kind::AtMostOne, slits, 0, 0);
            vm.leaf[static_cast<std::size_t>(c)].push_back(leaf);
            encode_conditional_amo(b, leaf, slits);
            splice(b.clauses);
        }
        for (int lvl = 1; lvl <= levels; ++lvl) {
            for (int c = 0; c < ncand; ++c) {
                std::vector<Lit> tlits;
                for (auto& [other, slit] : partners[static_cast<std::size_t>(c)]) {
                    Lit prev_leaf = vm.leaf[static_cast<std::size_t>(other)]
                                           [static_cast<std::size_t>(lvl - 1)];
                    Lit in[2] = {slit, prev_leaf};
                    Lit t = b.new_aux(AuxDef::Kind::AndNot, in, 0, 0);
                    // s & !leaf(other, lvl-1) -> t
                    b.clauses.add({-slit, prev_leaf, t});
                    tlits.push_back(t);
                }
                Lit leaf = b.new_aux(AuxDef::Kind::AtMostOne, tlits, 0, 0);
                vm.leaf[static_cast<std::size_t>(c)].push_back(leaf);
                encode_conditional_amo(b, leaf, tlits);
                splice(b.clauses);
            }
        }
        for (int c = 0; c < ncand; ++c)
            enc.hard.add({vm.leaf[static_cast<std::size_t>(c)][static_cast<std::size_t>(levels)]});
    }

    // (i) soft clauses and the objective offset.
    std::int64_t offset = 0;
    for (int c = 0; c < ncand; ++c) {
        std::int64_t w = table.score(vm.candidates[static_cast<std::size_t>(c)]);
        if (w < 0) {
            enc.soft.add({-vm.x[static_cast<std::size_t>(c)]});
            enc.soft_weight.push_back(-w);
        } else if (w > 0) {
            enc.soft.add({vm.x[static_cast<std::size_t>(c)]});
            enc.soft_weight.push_back(w);
            offset += w;
        }
    }
    for (std::size_t p = 0; p < vm.sep_pairs.size(); ++p) {
        NodeSet label = vm.candidates[static_cast<std::size_t>(vm.sep_pairs[p].first)] &
                        vm.candidates[static_cast<std::size_t>(vm.sep_pairs[p].second)];
        std::int64_t w = table.score(label);
        if (w < 0) {
            enc.soft.add({vm.s[p]});
            enc.soft_weight.push_back(-w);
            offset += -w;
        } else if (w > 0) {
            enc.soft.add({-vm.s[p]});
            enc.soft_weight.push_back(w);
        }
    }
    enc.offset = offset;

    enc.aux = std::move(b.aux);
    enc.aux_inputs = std::move(b.aux_inputs);
    enc.var_count = b.var_count;
    return enc;
}

std::optional<std::pair<Section, std::uint32_t>> find_violated_hard(const Encoding& enc,
                                                                    const Assignment& a) {
    for (std::size_t i = 0; i < enc.hard.size(); ++i) {
        if (clause_satisfied(enc.hard[i], a)) continue;
        for (std::size_t s = 0; s < static_cast<std::size_t>(Section::kCount); ++s) {
            auto [lo, hi] = enc.sections[s];
            if (i >= lo && i < hi)
                return std::make_pair(static_cast<Section>(s), static_cast<std::uint32_t>(i));
        }
        return std::make_pair(Section::kCount, static_cast<std::uint32_t>(i));
    }
    return std::nullopt;
}

std::int64_t objective_of(const Encoding& enc, const Assignment& a) {
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < enc.soft.size(); ++i)
        if (!clause_satisfied(enc.soft[i], a)) cost += enc.soft_weight[i];
    return enc.offset - cost;
}

void derive_aux(const Encoding& enc, Assignment& a) {
    derive_aux_defs(enc.aux, enc.aux_inputs, a);
}

Assignment canonical_assignment(const ChordalNetwork& net, const Encoding& enc) {
    const VarMap& vm = enc.vars;
    Assignment a(enc.var_count);

    std::vector<int> clique_cand(net.cliques.size());
    for (std::size_t i = 0; i < net.cliques.size(); ++i) {
        int c = vm.candidate_of(net.cliques[i]);
        if (c < 0)
            throw InputError("network clique exceeds the candidate size cap");
        clique_cand[i] = c;
        a.set_var(vm.x[static_cast<std::size_t>(c)], true);
    }
    Graph g = union_graph(net.cliques, vm.n_vars);
    for (auto [u, v] : g.edges()) a.set_var(vm.e_var(u, v), true);
    for (const CliqueGraphEdge& e : net.forest.edges) {
        int p = vm.sep_index(clique_cand[static_cast<std::size_t>(e.a)],
                             clique_cand[static_cast<std::size_t>(e.b)]);
        if (p < 0) throw InputError("forest edge joins non-intersecting candidates");
        a.set_var(vm.s[static_cast<std::size_t>(p)], true);
    }
    derive_aux(enc, a);
    return a;
}

DecodedNetwork decode_model(const Encoding& enc, const Assignment& a,
                            const IntScoreTable& table) {
    const VarMap& vm = enc.vars;
    if (a.value.size() != static_cast<std::size_t>(enc.var_count) + 1)
        throw InputError("assignment size does not match the encoding");
    if (auto bad = find_violated_hard(enc, a)) {
        const char* where = bad->first == Section::kCount ? "?" : section_name(bad->first);
        throw VerifyError(std::string("model violates a hard clause (") + where +
                          ", index " + std::to_string(bad->second) + ")");
    }

    DecodedNetwork out;
    ChordalNetwork& net = out.network;
    std::vector<int> cand_to_pos(vm.candidates.size(), -1);
    for (std::size_t c = 0; c < vm.candidates.size(); ++c)
        if (a.var(vm.x[c])) {
            cand_to_pos[c] = static_cast<int>(net.cliques.size());
            net.cliques.push_back(vm.candidates[c]);
        }

    for (std::size_t p = 0; p < vm.sep_pairs.size(); ++p) {
        if (!a.var(vm.s[p])) continue;
        auto [ci, cj] = vm.sep_pairs[p];
        int pa = cand_to_pos[static_cast<std::size_t>(ci)];
        int pb = cand_to_pos[static_cast<std::size_t>(cj)];
        if (pa < 0 || pb < 0)
            throw VerifyError("separator edge selects an unchosen clique");
        NodeSet label = vm.candidates[static_cast<std::size_t>(ci)] &
                        vm.candidates[static_cast<std::size_t>(cj)];
        CliqueGraphEdge e;
        e.a = std::min(pa, pb);
        e.b = std::max(pa, pb);
        e.label = label;
        e.weight = label.size();
        net.forest.edges.push_back(e);
    }
    std::sort(net.forest.edges.begin(), net.forest.edges.end(),
              [](const CliqueGraphEdge& x, const CliqueGraphEdge& y) {
                  return x.a != y.a ? x.a < y.a : x.b < y.b;
              });
    net.separators = separators_of(net.forest);

    // Independent re-verification through the chordal module; an encoding
    // is never trusted end-to-end.
    NodeSet covered;
    for (NodeSet c : net.cliques) covered = covered | c;
    for (int v = 0; v < vm.n_vars; ++v)
        if (!covered.contains(v)) throw VerifyError("decoded network misses node coverage");

    Graph g = union_graph(net.cliques, vm.n_vars);
    if (!is_chordal(g).chordal) throw VerifyError("decoded edge union is not chordal");
    if (maximal_cliques(g) != net.cliques)
        throw VerifyError("decoded cliques are not the maximal cliques of their edge union");

    {
        // forest must be acyclic
        std::vector<int> parent(net.cliques.size());
        for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
        auto find = [&](int v) {
            while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
            return v;
        };
        for (const CliqueGraphEdge& e : net.forest.edges) {
            int ra = find(e.a), rb = find(e.b);
            if (ra == rb) throw VerifyError("decoded separator edges form a cycle");
            parent[static_cast<std::size_t>(ra)] = rb;
        }
    }
    if (!is_balanced(net.cliques, net.forest))
        throw VerifyError("decoded forest violates the balancing condition");
    if (!check_running_intersection(net.forest, net.cliques))
        throw VerifyError("decoded forest violates the running intersection property");
    {
        CliqueGraph cg = clique_graph(net.cliques);
        SpanningForest kruskal = max_weight_spanning_forest(cg);
        if (separators_of(kruskal) != net.separators)
            throw VerifyError("decoded separators differ from a maximum weight spanning forest's");
    }

    out.objective = network_score(table, net.cliques, net.separators);
    if (out.objective != objective_of(enc, a))
        throw VerifyError("objective bookkeeping mismatch between model and network score");
    net.score = static_cast<double>(out.objective) / static_cast<double>(enc.scale);
    return out;
}

std::string emit_wcnf(const Encoding& enc) {
    std::int64_t top = 1;
    for (std::int64_t w : enc.soft_weight) top += w;

    std::string out;
    out.reserve(32 * (enc.hard.total_literals() + enc.soft.total_literals() + 8));
    out += "p wcnf ";
    append_int(out, enc.var_count);
    out += ' ';
    append_int(out, static_cast<std::int64_t>(enc.hard.size() + enc.soft.size()));
    out += ' ';
    append_int(out, top);
    out += '\n';
    for (std::size_t i = 0; i < enc.hard.size(); ++i) {
        append_int(out, top);
        for (Lit l : enc.hard[i]) {
            out += ' ';
            append_int(out, l);
        }
        out += " 0\n";
    }
    for (std::size_t i = 0; i < enc.soft.size(); ++i) {
        append_int(out, enc.soft_weight[i]);
        for (Lit l : enc.soft[i]) {
            out += ' ';
            append_int(out, l);
        }
        out += " 0\n";
    }
    return out;
}

std::string emit_varmap(const Encoding& enc) {
    const VarMap& vm = enc.vars;
    std::string out;
    for (std::size_t c = 0; c < vm.candidates.size(); ++c) {
        out += "x ";
        append_int(out, vm.x[c]);
        out += ' ';
        append_int(out, vm.candidates[c].size());
        vm.candidates[c].for_each([&](int v) {
            out += ' ';
            append_int(out, v);
        });
        out += '\n';
    }
    for (std::size_t p = 0; p < vm.sep_pairs.size(); ++p) {
        out += "s ";
        append_int(out, vm.s[p]);
        out += ' ';
        append_int(out, vm.sep_pairs[p].first);
        out += ' ';
        append_int(out, vm.sep_pairs[p].second);
        out += '\n';
    }
    return out;
}

} // namespace chordalnet
