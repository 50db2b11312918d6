#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace polyrank {

// Small undirected simple graph, n <= 32, adjacency kept as one bitmask per
// vertex.  Vertices may carry labels of the form "3b" / "3s" (flat / sharp
// end of loop 3) when the graph is the link of a one-vertex complex.
struct LinkGraph {
    int n = 0;
    std::vector<uint32_t> adj;
    std::vector<std::string> labels;

    LinkGraph() = default;
    explicit LinkGraph(int nverts) : n(nverts), adj(nverts, 0) {}

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return (adj[u] >> v) & 1u; }
    int degree(int v) const { return __builtin_popcount(adj[v]); }
    int edge_count() const;
    std::vector<int> neighbors(int v) const;
    bool connected() const;
    // all-pairs distances by BFS; unreachable = -1
    std::vector<std::vector<int>> distances() const;
    bool operator==(const LinkGraph& o) const { return n == o.n && adj == o.adj; }
};

inline constexpr int kGirthInfinity = std::numeric_limits<int>::max();

int girth(const LinkGraph& g);
bool is_ample(const LinkGraph& g);

// Canonical form: the relabeling of g maximizing the row-major adjacency code.
// relabel (if given) receives the map old vertex -> new position.
LinkGraph canonical_form(const LinkGraph& g, std::vector<int>* relabel = nullptr);
bool graphs_isomorphic(const LinkGraph& a, const LinkGraph& b);

// All connected trivalent graphs on n vertices with girth exactly 6, one
// canonical representative per isomorphism class.
std::vector<LinkGraph> enumerate_ample_cubic(int n);

struct Spectrum {
    // (eigenvalue, multiplicity), descending, grouped with tolerance 1e-9
    std::vector<std::pair<double, int>> eigenvalues;
    double lambda1 = 0.0;  // 1 - second largest eigenvalue of D
};
Spectrum random_walk_spectrum(const LinkGraph& g);

enum class PairType { Type32, Type2, Other };
// number of simple paths of length 3 between a and b
int length3_path_count(const LinkGraph& g, int a, int b);
PairType pair_type(const LinkGraph& g, int a, int b, int* raw_count = nullptr);

struct SixCycleInfo {
    std::array<int, 6> cycle;   // vertices in cyclic order
    std::array<PairType, 3> antipodal;  // types of (c0,c3),(c1,c4),(c2,c5)
};
std::vector<SixCycleInfo> six_cycle_analysis(const LinkGraph& g);

std::vector<std::vector<int>> automorphisms(const LinkGraph& g);

struct AutReport {
    long order = 0;
    bool tripod_transitive = false;       // transitive on ordered tripods
    long tripod_setwise_stabilizer = 0;   // order of the stabilizer of a star
    bool tripod_pointwise_trivial = false;
};
AutReport automorphism_group_order(const LinkGraph& g);

// Reference constructions.
LinkGraph make_gp(int n, int k);        // generalized Petersen graph GP(n,k)
LinkGraph make_l74();                   // GP(8,3), with flat/sharp labels unset
LinkGraph make_l74_from_factor();       // bipartite graph of A = Id + s2 + s7
LinkGraph make_heawood();               // incidence graph of the Fano plane

// adjacency-list text format, one line per vertex "v: u1 u2 u3"
LinkGraph parse_graph_text(const std::string& text);
std::string graph_to_text(const LinkGraph& g);

}  // namespace polyrank
