#include "polyrank/flats.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace polyrank {

namespace {

// triangle identity across both cover representations: corner-ordered
// vertices plus face index
using Tri = std::array<int, 4>;

// uniform access to a developed cover for the patch search
struct Cov {
    const Presentation* pres = nullptr;
    std::function<std::vector<Tri>(int)> trisAt;  // triangles at a vertex
    std::function<int(int, int)> step;            // signed letter step, -1 absent
};

Cov make_cov(const CoverBall& b) {
    Cov c;
    c.pres = &b.pres;
    c.trisAt = [&b](int v) {
        if (!b.complete(v)) throw std::invalid_argument("ball too small for the requested patch");
        std::vector<Tri> out;
        for (int id : b.trisAt[v]) {
            const Triangle& t = b.triangles[id];
            out.push_back({t.v[0], t.v[1], t.v[2], t.face});
        }
        return out;
    };
    c.step = [&b](int v, int m) {
        int w = b.step(v, m);
        return w == kOutOfBall ? -1 : w;
    };
    return c;
}

Cov make_cov(LazyCover& c) {
    Cov k;
    k.pres = &c.presentation();
    k.trisAt = [&c](int v) {
        v = c.find(v);
        std::set<Tri> seen;
        for (int f = 0; f < 8; f++)
            for (int kk = 0; kk < 3; kk++) {
                std::array<int, 3> t = c.triangle_at(v, f, kk);
                seen.insert({c.find(t[0]), c.find(t[1]), c.find(t[2]), f});
            }
        return std::vector<Tri>(seen.begin(), seen.end());
    };
    k.step = [&c](int v, int m) {
        int w = c.step(c.find(v), m);
        return w < 0 ? -1 : c.find(w);
    };
    return k;
}

bool tri_contains(const Tri& t, int v) { return t[0] == v || t[1] == v || t[2] == v; }

int corner_of(const Tri& t, int v) {
    for (int k = 0; k < 3; k++)
        if (t[k] == v) return k;
    throw std::logic_error("vertex not on triangle");
}

// signed letter of the side running from p to q inside t, 0 if no such side
int side_letter(const Presentation& pres, const Tri& t, int p, int q) {
    for (int k = 0; k < 3; k++) {
        int a = t[k], b = t[(k + 2) % 3], m = pres.faces[t[3]][k];
        if (a == p && b == q) return m;
        if (a == q && b == p) return -m;
    }
    return 0;
}

// ---------- lattice model (basis vectors at 60 degrees) ----------

using MV = std::pair<int, int>;  // lattice vertex (a, b) at a*e1 + b*e2

struct MTri {
    std::array<MV, 3> v;
    bool operator<(const MTri& o) const { return v < o.v; }
};

MTri model_up(int a, int b) { return {{MV{a, b}, MV{a + 1, b}, MV{a, b + 1}}}; }
MTri model_down(int a, int b) { return {{MV{a + 1, b}, MV{a, b + 1}, MV{a + 1, b + 1}}}; }

// doubled coordinates: vertex (a,b) sits at ((2a+b)/2, b*sqrt(3)/2)
struct P2 {
    long long u, v;  // u = 2a+b, v = b
};
P2 pos(MV p) { return {2LL * p.first + p.second, (long long)p.second}; }
P2 sub(P2 x, P2 y) { return {x.u - y.u, x.v - y.v}; }
__int128 dot4(P2 x, P2 y) { return (__int128)x.u * y.u + (__int128)3 * x.v * y.v; }  // 4*dot
long long cross4(P2 x, P2 y) { return x.u * y.v - x.v * y.u; }

// does the interior of t meet the closed disk of squared radius r2num/r2den
// around center?  exact rational arithmetic
bool tri_meets_disk(const MTri& t, MV center, long long r2num, long long r2den) {
    if (r2num == 0) return false;  // lattice points are never triangle-interior
    P2 c = pos(center);
    P2 p[3] = {pos(t.v[0]), pos(t.v[1]), pos(t.v[2])};
    // center inside or on the triangle: the interior comes arbitrarily close
    long long s0 = cross4(sub(p[1], p[0]), sub(c, p[0]));
    long long s1 = cross4(sub(p[2], p[1]), sub(c, p[1]));
    long long s2 = cross4(sub(p[0], p[2]), sub(c, p[2]));
    if ((s0 >= 0 && s1 >= 0 && s2 >= 0) || (s0 <= 0 && s1 <= 0 && s2 <= 0)) return true;
    // otherwise the infimum is attained on an edge and the interior meets the
    // closed disk iff that distance is strictly below the radius
    for (int i = 0; i < 3; i++) {
        P2 A = p[i], B = p[(i + 1) % 3];
        P2 ca = sub(c, A), ba = sub(B, A);
        __int128 tnum = dot4(ca, ba), tden = dot4(ba, ba);
        __int128 d2num4, den;  // 4*dist^2 = d2num4 / den
        if (tnum <= 0) {
            d2num4 = dot4(ca, ca);
            den = 1;
        } else if (tnum >= tden) {
            P2 cb = sub(c, B);
            d2num4 = dot4(cb, cb);
            den = 1;
        } else {
            d2num4 = dot4(ca, ca) * tden - tnum * tnum;
            den = tden;
        }
        if (d2num4 * r2den < (__int128)4 * den * r2num) return true;
    }
    return false;
}

// all model triangles whose interior meets the closed disk
std::vector<MTri> disk_model(MV center, long long r2num, long long r2den) {
    std::vector<MTri> out;
    long long W = 2;
    while (W * W * r2den < 4 * r2num) W++;  // W >= 2r covers the disk
    for (long long a = center.first - W; a <= center.first + W; a++)
        for (long long b = center.second - W; b <= center.second + W; b++) {
            MTri up = model_up((int)a, (int)b), down = model_down((int)a, (int)b);
            if (tri_meets_disk(up, center, r2num, r2den)) out.push_back(up);
            if (tri_meets_disk(down, center, r2num, r2den)) out.push_back(down);
        }
    return out;
}

int hexdist(MV p) {
    return (std::abs(p.first) + std::abs(p.second) + std::abs(p.first + p.second)) / 2;
}

// ---------- patch embedding search ----------

struct Embed {
    std::vector<Tri> tris;   // image per model triangle, in search order
    std::map<MV, int> vmap;  // model vertex -> cover vertex
};

struct PatchSearch {
    Cov* cov;
    std::vector<MTri> order;
    std::map<MV, int> vmap;
    std::map<int, MV> rmap;
    std::set<Tri> used;
    std::vector<Tri> assign;
    std::vector<Embed>* results;
    long long nodes = 0, nodeCap = 50'000'000;
    bool stopAtFirst = false;
    bool done = false;

    void dfs(size_t i) {
        if (done) return;
        if (++nodes > nodeCap) throw BudgetExceeded("patch search budget exceeded");
        if (i == order.size()) {
            results->push_back({assign, vmap});
            if (stopAtFirst) done = true;
            return;
        }
        const MTri& t = order[i];
        std::vector<int> mappedIdx, freeIdx;
        for (int k = 0; k < 3; k++) (vmap.count(t.v[k]) ? mappedIdx : freeIdx).push_back(k);
        int p = vmap.at(t.v[mappedIdx[0]]);
        for (const Tri& cand : cov->trisAt(p)) {
            if (used.count(cand)) continue;
            bool ok = true;
            for (int k : mappedIdx)
                if (!tri_contains(cand, vmap.at(t.v[k]))) { ok = false; break; }
            if (!ok) continue;
            std::vector<int> rest;  // candidate vertices left for the free corners
            for (int cv : {cand[0], cand[1], cand[2]}) {
                bool taken = false;
                for (int k : mappedIdx) taken |= (vmap.at(t.v[k]) == cv);
                if (!taken) rest.push_back(cv);
            }
            if (rest.size() != freeIdx.size()) continue;
            std::sort(rest.begin(), rest.end());
            do {
                std::vector<MV> placed;
                bool good = true;
                for (size_t j = 0; j < freeIdx.size(); j++) {
                    MV mv = t.v[freeIdx[j]];
                    if (rmap.count(rest[j])) { good = false; break; }
                    vmap[mv] = rest[j];
                    rmap[rest[j]] = mv;
                    placed.push_back(mv);
                }
                if (good) {
                    used.insert(cand);
                    assign.push_back(cand);
                    dfs(i + 1);
                    assign.pop_back();
                    used.erase(cand);
                }
                for (MV mv : placed) {
                    rmap.erase(vmap.at(mv));
                    vmap.erase(mv);
                }
                if (done) return;
            } while (std::next_permutation(rest.begin(), rest.end()));
        }
    }
};

// order model triangles so each one shares vertices with the region already
// processed (starting from the pinned vertices)
std::vector<MTri> connect_order(std::vector<MTri> tris, const std::set<MV>& pinned) {
    std::vector<MTri> order;
    std::set<MV> have = pinned;
    std::vector<bool> taken(tris.size(), false);
    for (size_t step = 0; step < tris.size(); step++) {
        int best = -1, bestShared = 0;
        for (size_t i = 0; i < tris.size(); i++) {
            if (taken[i]) continue;
            int shared = 0;
            for (const MV& v : tris[i].v) shared += (int)have.count(v);
            if (shared > bestShared) { bestShared = shared; best = (int)i; }
        }
        if (best < 0) throw std::logic_error("disconnected patch model");
        taken[best] = true;
        order.push_back(tris[best]);
        for (const MV& v : tris[best].v) have.insert(v);
    }
    return order;
}

std::vector<Embed> enumerate_patches(Cov& cov, const std::vector<MTri>& tris,
                                     const std::map<MV, int>& pins, bool stopAtFirst = false) {
    std::vector<Embed> results;
    if (tris.empty()) {
        results.push_back({{}, pins});
        return results;
    }
    std::set<MV> pinned;
    for (const auto& [mv, cv] : pins) pinned.insert(mv);
    PatchSearch s;
    s.cov = &cov;
    s.order = connect_order(tris, pinned);
    for (const auto& [mv, cv] : pins) {
        s.vmap[mv] = cv;
        if (s.rmap.count(cv)) throw std::invalid_argument("non-injective pins");
        s.rmap[cv] = mv;
    }
    s.results = &results;
    s.stopAtFirst = stopAtFirst;
    s.dfs(0);
    return results;
}

std::set<std::vector<Tri>> distinct_supports(const std::vector<Embed>& embeds) {
    std::set<std::vector<Tri>> out;
    for (const Embed& e : embeds) {
        std::vector<Tri> s = e.tris;
        std::sort(s.begin(), s.end());
        out.insert(s);
    }
    return out;
}

int tri_id(const CoverBall& b, const Tri& t) {
    for (int id : b.trisAt[t[0]]) {
        const Triangle& tr = b.triangles[id];
        if (tr.face == t[3] && tr.v[0] == t[0] && tr.v[1] == t[1] && tr.v[2] == t[2]) return id;
    }
    throw std::logic_error("cover triangle not found");
}

std::vector<int> support_ids(const CoverBall& b, const std::vector<Tri>& tris) {
    std::vector<int> ids;
    for (const Tri& t : tris) ids.push_back(tri_id(b, t));
    std::sort(ids.begin(), ids.end());
    return ids;
}

// ---------- flat strip rows ----------

struct Row {
    std::vector<Tri> up, down;      // per window position
    std::vector<int> upper;         // upper line vertices (size L+1)
    std::vector<int> upperLetters;  // letters along the upper line (size L)
    int rung0 = 0;                  // signed letter of the rung at position 0
};

// All flat height-1 rows over the line v[0..L] with edge letters w[0..L-1],
// where v[L] is the image of v[0] under the period-L deck translation of the
// line.  The wrap conditions (the closing rung repeats the opening rung, and
// the seam fans do not fold) make every reported row extend to a locally
// flat periodic strip.  Rows meeting `excluded` are skipped, which prevents
// a stacked row from folding back onto the previous layer.
std::vector<Row> enumerate_rows(Cov& cov, const std::vector<int>& v, const std::vector<int>& w,
                                const std::set<Tri>& excluded) {
    int L = (int)w.size();
    if ((int)v.size() != L + 1) throw std::invalid_argument("line/letters length mismatch");
    std::vector<Row> out;
    // u = rung top at position i, rl = rung letter from v[i] to u
    std::function<void(Row&, int, int, int)> extend = [&](Row& row, int i, int u, int rl) {
        if (i == L) {
            if (u != cov.step(v[L], row.rung0)) return;  // rung vertex must repeat
            const Tri& lastDown = row.down[L - 1];
            if (side_letter(*cov.pres, lastDown, v[L], u) != row.rung0) return;  // rung edge too
            // seam fold: the translate of the opening up triangle coincides
            // with the closing down triangle iff face and anchor corner agree
            // (a triangle is determined by a vertex, a face and a corner)
            const Tri& firstUp = row.up[0];
            if (firstUp[3] == lastDown[3] &&
                corner_of(firstUp, v[0]) == corner_of(lastDown, v[L]))
                return;
            out.push_back(row);
            return;
        }
        const Tri* prevDown = i > 0 ? &row.down[i - 1] : nullptr;
        for (const Tri& tu : cov.trisAt(v[i])) {
            if (!tri_contains(tu, v[i + 1]) || !tri_contains(tu, u)) continue;
            if (side_letter(*cov.pres, tu, v[i], v[i + 1]) != w[i]) continue;
            if (side_letter(*cov.pres, tu, v[i], u) != rl) continue;
            if (excluded.count(tu)) continue;
            if (prevDown && tu == *prevDown) continue;  // fold at v[i]
            int rl2 = side_letter(*cov.pres, tu, v[i + 1], u);
            for (const Tri& td : cov.trisAt(v[i + 1])) {
                if (td == tu || !tri_contains(td, u) || excluded.count(td)) continue;
                if (side_letter(*cov.pres, td, v[i + 1], u) != rl2) continue;  // same rung edge
                int u2 = -1;
                for (int cv : {td[0], td[1], td[2]})
                    if (cv != v[i + 1] && cv != u) u2 = cv;
                if (u2 < 0) continue;
                int ul = side_letter(*cov.pres, td, u, u2);
                int rl3 = side_letter(*cov.pres, td, v[i + 1], u2);
                if (ul == 0 || rl3 == 0) continue;
                row.up.push_back(tu);
                row.down.push_back(td);
                row.upper.push_back(u2);
                row.upperLetters.push_back(ul);
                extend(row, i + 1, u2, rl3);
                row.up.pop_back();
                row.down.pop_back();
                row.upper.pop_back();
                row.upperLetters.pop_back();
            }
        }
    };
    std::set<int> rungSeen;
    for (const Tri& t0 : cov.trisAt(v[0])) {
        if (!tri_contains(t0, v[1])) continue;
        if (side_letter(*cov.pres, t0, v[0], v[1]) != w[0]) continue;
        int u0 = -1;
        for (int cv : {t0[0], t0[1], t0[2]})
            if (cv != v[0] && cv != v[1]) u0 = cv;
        if (u0 < 0) continue;
        int m0 = side_letter(*cov.pres, t0, v[0], u0);
        if (m0 == 0 || rungSeen.count(m0)) continue;
        rungSeen.insert(m0);
        Row row;
        row.rung0 = m0;
        row.upper.push_back(u0);
        extend(row, 0, u0, m0);
    }
    return out;
}

}  // namespace

// ---------- hexagonal flat disks ----------

std::vector<FlatPatch> flat_disks_at(const CoverBall& b, int A, int n) {
    if (A < 0 || A >= b.vertex_count()) throw std::invalid_argument("bad center vertex");
    if (n < 0) throw std::invalid_argument("bad radius");
    if (n == 0) return {FlatPatch{}};
    std::vector<MTri> model;
    for (int a = -n - 1; a <= n; a++)
        for (int bb = -n - 1; bb <= n; bb++)
            for (const MTri& t : {model_up(a, bb), model_down(a, bb)}) {
                bool in = true;
                for (const MV& mv : t.v) in = in && (hexdist(mv) <= n);
                if (in) model.push_back(t);
            }
    Cov cov = make_cov(b);
    std::vector<Embed> embeds = enumerate_patches(cov, model, {{MV{0, 0}, A}});
    std::vector<FlatPatch> out;
    for (const std::vector<Tri>& s : distinct_supports(embeds)) {
        FlatPatch p;
        p.triangles = support_ids(b, s);
        out.push_back(p);
    }
    return out;
}

// ---------- mesoscopic profile ----------

Profile mesoscopic_profile(const CoverBall& b, int A, const std::vector<int>& grid, int margin) {
    if (A < 0 || A >= b.vertex_count()) throw std::invalid_argument("bad center vertex");
    if (margin < 1) throw std::invalid_argument("bad margin");
    Profile prof;
    prof.center = A;
    prof.margin = margin;
    prof.grid = grid;
    // margin in grid steps, rounded up: smallest t with t >= 2*sqrt(3)*margin
    int ext = 1;
    while ((long long)ext * ext < 12LL * margin * margin) ext++;
    Cov cov = make_cov(b);
    for (int m : grid) {
        if (m < 0) throw std::invalid_argument("bad grid radius");
        // radius m*sqrt(3)/6, squared radius m^2/12
        std::vector<MTri> small = disk_model({0, 0}, (long long)m * m, 12);
        std::vector<Embed> embeds = enumerate_patches(cov, small, {{MV{0, 0}, A}});
        // one representative embedding per support; extendability depends
        // only on the image subcomplex
        std::map<std::vector<Tri>, const Embed*> reps;
        for (const Embed& e : embeds) {
            std::vector<Tri> s = e.tris;
            std::sort(s.begin(), s.end());
            reps.emplace(std::move(s), &e);
        }
        long long mb = m + ext;
        std::vector<MTri> big = disk_model({0, 0}, mb * mb, 12);
        int stuck = 0;
        for (const auto& [s, e] : reps)
            if (enumerate_patches(cov, big, e->vmap, true).empty()) stuck++;
        prof.total.push_back((int)reps.size());
        prof.counts.push_back(stuck);
    }
    return prof;
}

// ---------- periodic strips ----------

std::vector<FlatPatch> strips_on_geodesic(const CoverBall& b, const Path& boundary, int height,
                                          int periodBound) {
    int P0 = (int)boundary.letters.size();
    if (P0 < 1 || height < 1 || periodBound < P0)
        throw std::invalid_argument("bad strip parameters");
    // the periodic line must be geodesic, including across the wrap
    std::vector<int> twice = boundary.letters;
    twice.insert(twice.end(), boundary.letters.begin(), boundary.letters.end());
    if (!is_geodesic_word(b.pres, twice))
        throw std::invalid_argument("boundary word is not a periodic geodesic");
    int L = P0 * (periodBound / P0);
    int h = (L + 1) / 2;  // window positions -h .. L-h
    auto letter = [&](int p) { return boundary.letters[((p % P0) + P0) % P0]; };
    std::vector<int> v(L + 1), w(L);
    v[h] = boundary.start;
    for (int p = h; p < L; p++) {
        v[p + 1] = b.step(v[p], letter(p - h));
        if (v[p + 1] == kOutOfBall) throw std::invalid_argument("ball too small for the window");
    }
    for (int p = h; p > 0; p--) {
        v[p - 1] = b.step(v[p], -letter(p - 1 - h));
        if (v[p - 1] == kOutOfBall) throw std::invalid_argument("ball too small for the window");
    }
    for (int i = 0; i < L; i++) w[i] = letter(i - h);

    Cov cov = make_cov(b);
    struct Stack {
        std::vector<Row> rows;
        std::vector<std::vector<int>> lines;  // lines[0] = lower boundary
    };
    std::vector<Stack> stacks;
    Stack root;
    root.lines.push_back(v);
    std::function<void(Stack&, const std::set<Tri>&)> build = [&](Stack& st,
                                                                  const std::set<Tri>& excl) {
        if ((int)st.rows.size() == height) {
            stacks.push_back(st);
            return;
        }
        std::vector<int> letters = st.rows.empty() ? w : st.rows.back().upperLetters;
        for (const Row& row : enumerate_rows(cov, st.lines.back(), letters, excl)) {
            st.rows.push_back(row);
            st.lines.push_back(row.upper);
            std::set<Tri> ex2(row.up.begin(), row.up.end());
            ex2.insert(row.down.begin(), row.down.end());
            build(st, ex2);
            st.lines.pop_back();
            st.rows.pop_back();
        }
    };
    build(root, {});

    std::vector<FlatPatch> out;
    std::set<std::vector<int>> seen;
    for (const Stack& st : stacks) {
        // local label code per position; its minimal cyclic period is the
        // minimal period of the strip
        std::vector<std::vector<int>> code(L);
        for (int i = 0; i < L; i++) {
            code[i].push_back(w[i]);
            for (int r = 0; r < height; r++) {
                const Row& row = st.rows[r];
                const std::vector<int>& lo = st.lines[r];
                code[i].push_back(side_letter(b.pres, row.up[i], lo[i], row.upper[i]));
                code[i].push_back(row.up[i][3]);
                code[i].push_back(corner_of(row.up[i], lo[i]));
                code[i].push_back(row.down[i][3]);
                code[i].push_back(corner_of(row.down[i], lo[i + 1]));
                code[i].push_back(row.upperLetters[i]);
            }
        }
        int period = L;
        for (int d = 1; d < L; d++) {
            if (L % d != 0) continue;
            bool ok = true;
            for (int i = 0; i < L && ok; i++) ok = (code[i] == code[(i + d) % L]);
            if (ok) { period = d; break; }
        }
        FlatPatch p;
        p.period = period;
        const Row& top = st.rows.back();
        p.opposite.assign(top.upperLetters.begin(), top.upperLetters.begin() + period);
        std::vector<Tri> tris;
        for (const Row& row : st.rows) {
            tris.insert(tris.end(), row.up.begin(), row.up.end());
            tris.insert(tris.end(), row.down.begin(), row.down.end());
        }
        p.triangles = support_ids(b, tris);
        if (seen.insert(p.triangles).second) out.push_back(p);
    }
    return out;
}

// ---------- flat triangles over a geodesic base ----------

int flat_triangle_count(const CoverBall& b, const Path& base) {
    int n = (int)base.letters.size();
    if (n < 1) throw std::invalid_argument("empty base");
    if (!is_geodesic(b, base)) throw std::invalid_argument("base path is not geodesic");
    std::map<MV, int> pins;
    int cur = base.start;
    pins[{0, 0}] = cur;
    for (int i = 0; i < n; i++) {
        cur = b.step(cur, base.letters[i]);
        pins[{i + 1, 0}] = cur;
    }
    std::vector<MTri> model;
    for (int a = 0; a < n; a++)
        for (int bb = 0; a + bb < n; bb++) {
            model.push_back(model_up(a, bb));
            if (a + bb < n - 1) model.push_back(model_down(a, bb));
        }
    Cov cov = make_cov(b);
    return (int)distinct_supports(enumerate_patches(cov, model, pins)).size();
}

// ---------- free semigroup probes ----------

namespace {

// all nonempty products of at most L factors
std::vector<std::vector<int>> products(const std::vector<std::vector<int>>& words, int L) {
    if (words.empty() || L < 1) throw std::invalid_argument("bad probe input");
    for (const std::vector<int>& w : words)
        if (w.empty()) throw std::invalid_argument("empty probe word");
    std::vector<std::vector<int>> out;
    std::vector<int> seq;
    std::function<void(int)> rec = [&](int depth) {
        if (depth > 0) {
            std::vector<int> word;
            for (int idx : seq) word.insert(word.end(), words[idx].begin(), words[idx].end());
            out.push_back(word);
        }
        if (depth == L) return;
        if (out.size() > 100000) throw std::invalid_argument("too many products");
        for (size_t i = 0; i < words.size(); i++) {
            seq.push_back((int)i);
            rec(depth + 1);
            seq.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace

bool free_semigroup_probe(const CoverBall& b, const std::vector<std::vector<int>>& words, int L) {
    std::vector<std::vector<int>> prods = products(words, L);
    std::set<int> ends;
    for (const std::vector<int>& w : prods) {
        int v = trace_word(b, w);
        if (v == kOutOfBall) throw std::invalid_argument("ball too small for the probe");
        ends.insert(v);
    }
    return ends.size() == prods.size();
}

bool free_semigroup_probe(const Presentation& p, const std::vector<std::vector<int>>& words,
                          int L, long long budget) {
    std::vector<std::vector<int>> prods = products(words, L);
    std::set<std::vector<int>> uniq(prods.begin(), prods.end());
    if (uniq.size() != prods.size()) return false;  // equal strings, equal endpoints
    std::vector<bool> geo;
    for (const std::vector<int>& w : prods) geo.push_back(is_geodesic_word(p, w));
    // cheap pass first so that an equality surfaces before an undecidable
    // unequal pair exhausts the budget
    std::vector<std::pair<size_t, size_t>> open;
    long long quick = std::max<long long>(100000, budget / 50);
    for (size_t i = 0; i < prods.size(); i++)
        for (size_t j = i + 1; j < prods.size(); j++) {
            // two distinct locally geodesic words end at distinct vertices
            if (geo[i] && geo[j]) continue;
            try {
                if (words_equal(p, prods[i], prods[j], quick)) return false;
            } catch (const BudgetExceeded&) {
                open.emplace_back(i, j);
            }
        }
    bool undecided = false;
    for (auto [i, j] : open) {
        try {
            if (words_equal(p, prods[i], prods[j], budget)) return false;
        } catch (const BudgetExceeded&) {
            undecided = true;
        }
    }
    if (undecided) throw BudgetExceeded("probe pair undecided within budget");
    return true;
}

// ---------- exponential mesoscopic rank witness ----------

namespace {

// unrolled periodic row: triangles and the upper line over positions 0..N-1,
// reconstructed from the window row by the line's deck translation (a
// triangle is determined by an anchor vertex, its face and its corner)
struct Unrolled {
    std::vector<Tri> up, down;  // up: 0..N-1, down: 0..N-2
    std::vector<int> upper;     // 0..N-1
};

Unrolled unroll_row(LazyCover& c, const Row& row, const std::vector<int>& winLower,
                    const std::vector<int>& lowerExt) {
    int L = (int)row.upperLetters.size();
    int N = (int)lowerExt.size() - 1;
    Unrolled u;
    std::vector<int> upFace(L), upAnchor(L), upTop(L), downFace(L), downAnchor(L), downTop(L);
    for (int q = 0; q < L; q++) {
        upFace[q] = row.up[q][3];
        upAnchor[q] = corner_of(row.up[q], c.find(winLower[q]));
        upTop[q] = corner_of(row.up[q], c.find(row.upper[q]));
        downFace[q] = row.down[q][3];
        downAnchor[q] = corner_of(row.down[q], c.find(winLower[q + 1]));
        downTop[q] = corner_of(row.down[q], c.find(row.upper[q + 1]));
    }
    for (int j = 0; j < N; j++) {
        int q = j % L;
        std::array<int, 3> t = c.triangle_at(c.find(lowerExt[j]), upFace[q], upAnchor[q]);
        Tri tu = {c.find(t[0]), c.find(t[1]), c.find(t[2]), upFace[q]};
        u.up.push_back(tu);
        u.upper.push_back(tu[upTop[q]]);
    }
    for (int j = 0; j + 1 < N; j++) {
        int q = j % L;
        std::array<int, 3> t = c.triangle_at(c.find(lowerExt[j + 1]), downFace[q], downAnchor[q]);
        Tri td = {c.find(t[0]), c.find(t[1]), c.find(t[2]), downFace[q]};
        if (c.find(td[downTop[q]]) != c.find(u.upper[j + 1]) || !tri_contains(td, c.find(u.upper[j])))
            throw std::logic_error("row unroll inconsistency");
        u.down.push_back(td);
    }
    return u;
}

}  // namespace

MesoCheck meso_lower_bound_check(int k, long long budget) {
    if (k < 4) throw std::invalid_argument("k too small");
    MesoCheck res;
    res.k = k;
    int mu = 1;
    while (3LL * (mu + k) * (mu + k) < 4LL * k * k) mu++;  // mu = ceil(k*(2/sqrt(3)-1))
    res.mu = mu;
    res.bound = mu >= 2 ? (1LL << (2 * mu - 4)) : 1;

    const Presentation& pres = preset("V0_1").pres;
    LazyCover c(pres, budget);
    Cov cov = make_cov(c);
    static const int g[6] = {2, 7, 1, 8, 3, 4};  // hexagonal geodesic word

    // model support of the disk of radius k around the sector apex, indexed
    // by plane grid cells (i, j); cell (i,j) carries an up triangle T1 and a
    // down triangle T2, with lattice coordinates a = i - j, b = j
    MV apex{0, k};
    std::map<std::pair<int, int>, std::array<bool, 2>> cells;
    for (const MTri& t : disk_model(apex, (long long)k * k, 1)) {
        bool isUp = (t.v[0].second == t.v[1].second);
        int a = isUp ? t.v[0].first : t.v[0].first - 1, b = t.v[0].second;
        if (isUp)
            cells[{a + b, b}][0] = true;
        else
            cells[{a + b + 1, b}][1] = true;
    }
    int sJmax = 0, tImax = 0, iMax = 0, jMax = 0;
    for (const auto& [cell, fl] : cells) {
        (void)fl;
        auto [i, j] = cell;
        iMax = std::max(iMax, i + 1);
        jMax = std::max(jMax, j + 1);
        if (i >= 0 && j >= 0) continue;
        if (i < 0 && j >= 0) {
            if (i < -mu) throw std::logic_error("support dips below the strip band");
            sJmax = std::max(sJmax, j);
        } else if (j < 0 && i >= 0) {
            if (j < -mu) throw std::logic_error("support dips below the strip band");
            tImax = std::max(tImax, i);
        } else {
            throw std::logic_error("support reaches the opposite quadrant");
        }
    }
    int NS = sJmax + mu + 3, NT = tImax + mu + 3;
    int gridI = std::max(iMax, NT) + 1, gridJ = std::max(jMax, NS) + 1;

    // flat plane grid v(i,j), built by tracing 6-columns off the hexagonal line
    std::map<std::pair<int, int>, int> gv;
    gv[{0, 0}] = c.base();
    for (int j = 0; j < gridJ; j++) gv[{0, j + 1}] = c.trace_from(c.find(gv[{0, j}]), {6});
    gv[{0, -1}] = c.trace_from(c.find(gv[{0, 0}]), {-6});
    for (int j = -1; j <= gridJ; j++) {
        for (int i = 0; i < gridI; i++)
            gv[{i + 1, j}] = c.trace_from(c.find(gv[{i, j}]), {g[i % 6]});
        gv[{-1, j}] = c.trace_from(c.find(gv[{0, j}]), {-g[5]});
    }
    auto V = [&](int i, int j) { return c.find(gv.at({i, j})); };
    auto find_tri = [&](int x, int y, int z) {
        std::vector<Tri> hits;
        for (const Tri& t : cov.trisAt(x))
            if (tri_contains(t, y) && tri_contains(t, z)) hits.push_back(t);
        if (hits.size() != 1) throw std::logic_error("grid cell is not uniquely flat");
        return hits[0];
    };
    auto grid_tri = [&](int i, int j, int type) {
        return type == 0 ? find_tri(V(i, j), V(i + 1, j), V(i + 1, j + 1))
                         : find_tri(V(i, j), V(i + 1, j + 1), V(i, j + 1));
    };

    // stacked strip choices below a band line, mu-1 layers deep
    std::vector<Row> cur;
    std::vector<std::vector<Row>> stacks;
    std::function<void(const std::vector<int>&, const std::vector<int>&, const std::set<Tri>&)>
        rec = [&](const std::vector<int>& lv, const std::vector<int>& lw,
                  const std::set<Tri>& excl) {
            if ((int)cur.size() == mu - 1) {
                stacks.push_back(cur);
                return;
            }
            for (const Row& row : enumerate_rows(cov, lv, lw, excl)) {
                cur.push_back(row);
                std::set<Tri> ex2(row.up.begin(), row.up.end());
                ex2.insert(row.down.begin(), row.down.end());
                rec(row.upper, row.upperLetters, ex2);
                cur.pop_back();
            }
        };

    // S side: line i = -1, period 1; the grid triangle T2(-1,0) closes the
    // fan on the sector side, so stacked rows must avoid it
    std::vector<int> sLine = {V(-1, 0), V(-1, 1)};
    std::vector<int> sLet = {side_letter(pres, grid_tri(-1, 0, 1), V(-1, 0), V(-1, 1))};
    stacks.clear();
    rec(sLine, sLet, {grid_tri(-1, 0, 1)});
    std::vector<std::vector<Row>> stacksS = stacks;
    // T side: line j = -1, period 6, avoiding the grid triangles T1(i,-1)
    std::vector<int> tLine, tLet;
    std::set<Tri> tEx;
    for (int i = 0; i <= 6; i++) tLine.push_back(V(i, -1));
    for (int i = 0; i < 6; i++) {
        Tri t = grid_tri(i, -1, 0);
        tLet.push_back(side_letter(pres, t, V(i, -1), V(i + 1, -1)));
        tEx.insert(t);
    }
    stacks.clear();
    rec(tLine, tLet, tEx);
    std::vector<std::vector<Row>> stacksT = stacks;
    res.stacksLow = (int)stacksS.size();
    res.stacksHigh = (int)stacksT.size();

    // unroll every stack along its band
    struct Side {
        std::vector<std::vector<int>> lines;  // lines[t] = line at depth t+1 below the band line
        std::vector<Unrolled> rows;           // rows[t] covers the cells at depth t+2
    };
    auto unroll_side = [&](const std::vector<Row>& stack, std::vector<int> win,
                           std::vector<int> ext) {
        Side s;
        for (const Row& row : stack) {
            Unrolled u = unroll_row(c, row, win, ext);
            s.rows.push_back(u);
            win = row.upper;
            ext = u.upper;
            s.lines.push_back(ext);
        }
        return s;
    };
    std::vector<int> sExt, tExt;
    for (int j = 0; j <= NS; j++) sExt.push_back(V(-1, j));
    for (int i = 0; i <= NT; i++) tExt.push_back(V(i, -1));
    std::vector<Side> sidesS, sidesT;
    for (const std::vector<Row>& st : stacksS) sidesS.push_back(unroll_side(st, sLine, sExt));
    for (const std::vector<Row>& st : stacksT) sidesT.push_back(unroll_side(st, tLine, tExt));

    struct Disk {
        std::set<Tri> support;
        std::map<MV, int> vmap;
    };
    std::vector<Disk> reps;
    std::set<std::set<Tri>> seen;
    for (const Side& ss : sidesS)
        for (const Side& tt : sidesT) {
            auto vertex_at = [&](int i, int j) {
                if (i >= -1 && j >= -1) return V(i, j);
                if (i < -1) return c.find(ss.lines[-i - 2][j]);
                return c.find(tt.lines[-j - 2][i]);
            };
            Disk d;
            for (const auto& [cell, fl] : cells) {
                auto [i, j] = cell;
                for (int type = 0; type < 2; type++) {
                    if (!fl[type]) continue;
                    Tri t;
                    if (i >= -1 && j >= -1)
                        t = grid_tri(i, j, type);
                    else if (i < -1)
                        // cells at depth t+2 below the S line: T1 is the
                        // row's up triangle, T2 its down triangle
                        t = type == 0 ? ss.rows[-i - 2].up[j] : ss.rows[-i - 2].down[j];
                    else
                        // on the T side the roles swap
                        t = type == 0 ? tt.rows[-j - 2].down[i] : tt.rows[-j - 2].up[i];
                    d.support.insert({c.find(t[0]), c.find(t[1]), c.find(t[2]), t[3]});
                    int a = type == 0 ? i - j : i - j - 1;
                    MTri mt = type == 0 ? model_up(a, j) : model_down(a, j);
                    for (const MV& mv : mt.v)
                        d.vmap[mv] = vertex_at(mv.first + mv.second, mv.second);
                }
            }
            if (seen.insert(d.support).second) reps.push_back(std::move(d));
        }
    res.constructed = (int)reps.size();

    // obstruction: count the disks admitting no locally flat extension by
    // the margin (the all-plane choice always extends inside the plane, so
    // the lower bound is a strict fraction of all combinations)
    long long kb = k + 2;
    std::vector<MTri> big = disk_model(apex, kb * kb, 1);
    for (const Disk& d : reps)
        if (enumerate_patches(cov, big, d.vmap, true).empty()) res.unextendable++;
    res.pass = res.unextendable >= res.bound && res.bound > 0;
    return res;
}

}  // namespace polyrank
