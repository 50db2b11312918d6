#include "polyrank/linkgraph.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace polyrank {

void LinkGraph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("vertex");
    if (has_edge(u, v)) throw std::invalid_argument("multi-edge");
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
}

int LinkGraph::edge_count() const {
    int s = 0;
    for (int v = 0; v < n; v++) s += degree(v);
    return s / 2;
}

std::vector<int> LinkGraph::neighbors(int v) const {
    std::vector<int> r;
    for (uint32_t m = adj[v]; m; m &= m - 1) r.push_back(__builtin_ctz(m));
    return r;
}

bool LinkGraph::connected() const {
    if (n == 0) return false;
    uint32_t seen = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (uint32_t m = adj[v] & ~seen; m; m &= m - 1) {
            int u = __builtin_ctz(m);
            seen |= 1u << u;
            stack.push_back(u);
        }
    }
    return seen == (n == 32 ? ~0u : (1u << n) - 1);
}

std::vector<std::vector<int>> LinkGraph::distances() const {
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; s++) {
        d[s][s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : neighbors(v))
                if (d[s][u] < 0) {
                    d[s][u] = d[s][v] + 1;
                    q.push(u);
                }
        }
    }
    return d;
}

int girth(const LinkGraph& g) {
    if (g.n == 0) throw std::invalid_argument("empty graph");
    // BFS from every vertex; the first non-tree edge closing back gives the
    // shortest cycle through the root.
    int best = kGirthInfinity;
    for (int s = 0; s < g.n; s++) {
        std::vector<int> dist(g.n, -1), parent(g.n, -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : g.neighbors(v)) {
                if (u == parent[v]) continue;
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    q.push(u);
                } else {
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            }
        }
    }
    return best;
}

bool is_ample(const LinkGraph& g) {
    if (g.n == 0 || !g.connected()) return false;
    for (int v = 0; v < g.n; v++)
        if (g.degree(v) != 3) return false;
    return girth(g) == 6;
}

namespace {

// Branch-and-bound search for the vertex ordering maximizing the row-major
// adjacency code.  Maximizing (rather than minimizing) places edges early,
// which prunes hard on sparse graphs.  Optionally collects every optimal
// ordering, which yields the automorphism group.
struct CanonSearch {
    const LinkGraph& g;
    int n;
    std::vector<uint32_t> bestRows;  // bestRows[k] = adjacency of position k to positions <k
    std::vector<int> bestPerm;       // bestPerm[k] = original vertex at position k
    std::vector<std::vector<int>>* allPerms = nullptr;
    std::vector<int> perm, pos;
    std::vector<uint32_t> rows;
    bool haveBest = false;

    explicit CanonSearch(const LinkGraph& graph)
        : g(graph), n(graph.n), perm(n, -1), pos(n, -1), rows(n, 0) {}

    void run() {
        for (int v = 0; v < n; v++) place(0, v);
    }

    void place(int k, int v) {
        uint32_t row = 0;
        for (int j = 0; j < k; j++)
            if (g.has_edge(v, perm[j])) row |= 1u << j;
        if (haveBest) {
            if (row < bestRows[k]) return;
            if (row > bestRows[k]) haveBest = false;  // strictly better prefix
        }
        perm[k] = v;
        pos[v] = k;
        rows[k] = row;
        if (k + 1 == n) {
            if (!haveBest) {
                bestRows = rows;
                bestPerm = perm;
                haveBest = true;
                if (allPerms) {
                    allPerms->clear();
                    allPerms->push_back(perm);
                }
            } else if (allPerms) {
                allPerms->push_back(perm);
            }
        } else {
            bool wasBest = haveBest;
            for (int u = 0; u < n; u++)
                if (pos[u] < 0) place(k + 1, u);
            // if we reset haveBest above, descendants re-established it
            (void)wasBest;
        }
        perm[k] = -1;
        pos[v] = -1;
    }
};

LinkGraph apply_positions(const LinkGraph& g, const std::vector<int>& perm) {
    // perm[k] = original vertex at new position k
    LinkGraph h(g.n);
    for (int a = 0; a < g.n; a++)
        for (int b = a + 1; b < g.n; b++)
            if (g.has_edge(perm[a], perm[b])) h.add_edge(a, b);
    return h;
}

}  // namespace

LinkGraph canonical_form(const LinkGraph& g, std::vector<int>* relabel) {
    if (g.n == 0) return g;
    CanonSearch s(g);
    s.run();
    if (relabel) {
        relabel->assign(g.n, -1);
        for (int k = 0; k < g.n; k++) (*relabel)[s.bestPerm[k]] = k;
    }
    return apply_positions(g, s.bestPerm);
}

bool graphs_isomorphic(const LinkGraph& a, const LinkGraph& b) {
    if (a.n != b.n) return false;
    return canonical_form(a) == canonical_form(b);
}

std::vector<std::vector<int>> automorphisms(const LinkGraph& g) {
    std::vector<std::vector<int>> out;
    if (g.n == 0) return out;
    CanonSearch s(g);
    s.allPerms = &out;
    s.run();
    // orderings p,q with equal code differ by an automorphism v -> q[pos_p(v)]
    const std::vector<int>& p0 = out.front();
    std::vector<int> inv0(g.n);
    for (int k = 0; k < g.n; k++) inv0[p0[k]] = k;
    std::vector<std::vector<int>> autos;
    for (const auto& p : out) {
        std::vector<int> a(g.n);
        for (int v = 0; v < g.n; v++) a[v] = p[inv0[v]];
        autos.push_back(a);
    }
    return autos;
}

namespace {

struct AmpleEnum {
    int n;
    LinkGraph g;
    std::vector<LinkGraph> found;
    std::set<std::vector<uint32_t>> seen;

    explicit AmpleEnum(int nverts) : n(nverts), g(nverts) {
        // every girth-6 graph contains a 6-cycle; rooting the search at one
        // (vertices 0..5 in cyclic order) removes the freedom of how the
        // first cycle is discovered.  Duplicates are removed at the leaves by
        // canonical form, so any complete generation order is sound.
        if (n >= 6)
            for (int i = 0; i < 6; i++) g.add_edge(i, (i + 1) % 6);
    }

    // vertices within distance 4 of v; adding an edge from v to any of them
    // would close a cycle of length < 6
    uint32_t near4(int v) const {
        uint32_t cur = 1u << v, seenMask = cur;
        for (int it = 0; it < 4; it++) {
            uint32_t nxt = 0, m = cur;
            while (m) {
                int x = __builtin_ctz(m);
                m &= m - 1;
                nxt |= g.adj[x];
            }
            nxt &= ~seenMask;
            seenMask |= nxt;
            cur = nxt;
        }
        return seenMask;
    }

    void record() {
        if (girth(g) != 6 || !g.connected()) return;
        LinkGraph c = canonical_form(g);
        if (seen.insert(c.adj).second) found.push_back(c);
    }

    // lastV/lastU: the edge added by the parent call; the neighbors of each
    // vertex are forced to appear in increasing order
    void search(int lastV, int lastU) {
        int v = -1;
        for (int i = 0; i < n; i++)
            if (g.degree(i) < 3) {
                v = i;
                break;
            }
        if (v < 0) {
            record();
            return;
        }
        uint32_t forbidden = near4(v);
        bool touchedFresh = false;
        int from = (v == lastV) ? lastU + 1 : v + 1;
        // feasibility: v still needs 3 - deg(v) neighbors from the pool of
        // fresh vertices plus eligible started ones
        int pool = 0;
        for (int u = from; u < n; u++) {
            if (g.degree(u) >= 3) continue;
            if (g.degree(u) == 0 || !((forbidden >> u) & 1u)) pool++;
        }
        if (pool < 3 - g.degree(v)) return;
        for (int u = from; u < n; u++) {
            if (g.degree(u) >= 3) continue;
            bool fresh = g.degree(u) == 0;
            if (fresh) {
                // fresh vertices are interchangeable: attach only the first
                if (touchedFresh) break;
                touchedFresh = true;
            } else if ((forbidden >> u) & 1u) {
                continue;
            }
            g.adj[v] |= 1u << u;
            g.adj[u] |= 1u << v;
            search(v, u);
            g.adj[v] &= ~(1u << u);
            g.adj[u] &= ~(1u << v);
        }
    }
};

}  // namespace

std::vector<LinkGraph> enumerate_ample_cubic(int n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("n must be even, >= 4");
    if (n > 24) throw std::invalid_argument("enumeration budget: n <= 24");
    AmpleEnum e(n);
    e.search(-1, -1);
    std::sort(e.found.begin(), e.found.end(),
              [](const LinkGraph& a, const LinkGraph& b) { return a.adj < b.adj; });
    return e.found;
}

Spectrum random_walk_spectrum(const LinkGraph& g) {
    if (g.n == 0 || !g.connected()) throw std::invalid_argument("graph must be connected");
    int d = g.degree(0);
    for (int v = 0; v < g.n; v++)
        if (g.degree(v) != d) throw std::invalid_argument("graph must be regular");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int u = 0; u < g.n; u++)
        for (int v : g.neighbors(u)) D(u, v) = 1.0 / d;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + g.n);
    std::sort(ev.rbegin(), ev.rend());
    Spectrum s;
    constexpr double tol = 1e-9;
    for (double x : ev) {
        if (!s.eigenvalues.empty() && std::abs(s.eigenvalues.back().first - x) < tol)
            s.eigenvalues.back().second++;
        else
            s.eigenvalues.push_back({x, 1});
    }
    double second = ev.at(1);
    s.lambda1 = 1.0 - second;
    return s;
}

int length3_path_count(const LinkGraph& g, int a, int b) {
    int count = 0;
    for (int x : g.neighbors(a)) {
        if (x == b) continue;
        for (int y : g.neighbors(x)) {
            if (y == a || y == b) continue;
            if (g.has_edge(y, b)) count++;
        }
    }
    return count;
}

PairType pair_type(const LinkGraph& g, int a, int b, int* raw_count) {
    auto d = g.distances();
    if (d[a][b] != 3) throw std::invalid_argument("pair_type requires distance 3");
    int c = length3_path_count(g, a, b);
    if (raw_count) *raw_count = c;
    if (c == 2) return PairType::Type32;
    if (c == 3) return PairType::Type2;
    return PairType::Other;
}

std::vector<SixCycleInfo> six_cycle_analysis(const LinkGraph& g) {
    std::set<std::array<int, 6>> canon;
    std::vector<SixCycleInfo> out;
    std::array<int, 6> walk{};
    // depth-first walks of length 6 from each start, closing back
    std::function<void(int)> dfs = [&](int depth) {
        if (depth == 6) {
            if (!g.has_edge(walk[5], walk[0])) return;
            // canonical rotation+reflection with smallest vertex first
            std::array<int, 6> best = walk;
            for (int rev = 0; rev < 2; rev++) {
                std::array<int, 6> w = walk;
                if (rev) std::reverse(w.begin(), w.end());
                for (int r = 0; r < 6; r++) {
                    std::array<int, 6> rot;
                    for (int i = 0; i < 6; i++) rot[i] = w[(i + r) % 6];
                    best = std::min(best, rot);
                }
            }
            if (!canon.insert(best).second) return;
            SixCycleInfo info;
            info.cycle = best;
            for (int i = 0; i < 3; i++)
                info.antipodal[i] = pair_type(g, best[i], best[(i + 3) % 6]);
            out.push_back(info);
            return;
        }
        int v = walk[depth - 1];
        for (int u : g.neighbors(v)) {
            if (u == walk[0] && depth < 5) continue;
            bool used = false;
            for (int i = 0; i < depth; i++)
                if (walk[i] == u) used = true;
            if (used) continue;
            walk[depth] = u;
            dfs(depth + 1);
        }
    };
    for (int s = 0; s < g.n; s++) {
        walk[0] = s;
        dfs(1);
    }
    std::sort(out.begin(), out.end(),
              [](const SixCycleInfo& a, const SixCycleInfo& b) { return a.cycle < b.cycle; });
    return out;
}

AutReport automorphism_group_order(const LinkGraph& g) {
    AutReport rep;
    auto autos = automorphisms(g);
    rep.order = (long)autos.size();
    if (g.n == 0) return rep;
    bool cubic = true;
    for (int v = 0; v < g.n; v++)
        if (g.degree(v) != 3) cubic = false;
    if (!cubic) return rep;
    // ordered tripods: (vertex, ordering of its 3 neighbors)
    long tripods = (long)g.n * 6;
    // orbit of the tripod (0, neighbors in increasing order)
    std::set<std::array<int, 4>> orbit;
    long setwise = 0, pointwise = 0;
    auto nb0 = g.neighbors(0);
    for (const auto& a : autos) {
        std::array<int, 4> t{a[0], a[nb0[0]], a[nb0[1]], a[nb0[2]]};
        orbit.insert(t);
        std::array<int, 3> img{t[1], t[2], t[3]};
        std::array<int, 3> ref{nb0[0], nb0[1], nb0[2]};
        std::array<int, 3> sorted_img = img;
        std::sort(sorted_img.begin(), sorted_img.end());
        if (a[0] == 0 && sorted_img == ref) {
            setwise++;
            if (img == ref) pointwise++;
        }
    }
    rep.tripod_transitive = (long)orbit.size() == tripods;
    rep.tripod_setwise_stabilizer = setwise;
    rep.tripod_pointwise_trivial = pointwise == 1;
    return rep;
}

LinkGraph make_gp(int n, int k) {
    LinkGraph g(2 * n);
    for (int i = 0; i < n; i++) {
        g.add_edge(i, (i + 1) % n);  // outer cycle
        g.add_edge(i, n + i);        // spokes
        int j = (i + k) % n;         // inner star
        if (!g.has_edge(n + i, n + j)) g.add_edge(n + i, n + j);
    }
    return g;
}

LinkGraph make_l74() { return make_gp(8, 3); }

LinkGraph make_l74_from_factor() {
    // D = (1/3) [[0, A], [A^t, 0]] with A = Id + sigma_2 + sigma_7;
    // vertices 0..7 are one part, 8..15 the other, edge i ~ 8+j iff A(i,j)=1.
    LinkGraph g(16);
    for (int i = 0; i < 8; i++) {
        g.add_edge(i, 8 + i);
        g.add_edge(i, 8 + (i + 2) % 8);
        g.add_edge(i, 8 + (i + 7) % 8);
    }
    return g;
}

LinkGraph make_heawood() {
    // Fano plane: points 0..6, lines {i, i+1, i+3} mod 7
    LinkGraph g(14);
    for (int i = 0; i < 7; i++) {
        g.add_edge(i, 7 + i);
        g.add_edge((i + 1) % 7, 7 + i);
        g.add_edge((i + 3) % 7, 7 + i);
    }
    return g;
}

LinkGraph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<int, std::vector<int>>> rows;
    int maxv = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (blank) continue;
            throw std::invalid_argument("bad graph line: " + line);
        }
        std::string head = line.substr(0, colon);
        auto paren = head.find('(');
        if (paren != std::string::npos) head.erase(paren);  // optional label column
        int v = std::stoi(head);
        std::istringstream rest(line.substr(colon + 1));
        std::vector<int> nbs;
        int u;
        while (rest >> u) nbs.push_back(u);
        for (int x : nbs) maxv = std::max(maxv, x);
        maxv = std::max(maxv, v);
        rows.push_back({v, nbs});
    }
    LinkGraph g(maxv + 1);
    for (auto& [v, nbs] : rows)
        for (int u : nbs)
            if (!g.has_edge(v, u)) g.add_edge(v, u);
    return g;
}

std::string graph_to_text(const LinkGraph& g) {
    std::ostringstream out;
    for (int v = 0; v < g.n; v++) {
        out << v;
        if (!g.labels.empty() && !g.labels[v].empty()) out << "(" << g.labels[v] << ")";
        out << ":";
        for (int u : g.neighbors(v)) out << " " << u;
        out << "\n";
    }
    return out.str();
}

}  // namespace polyrank
