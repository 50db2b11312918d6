#include "polyrank/complexes.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace polyrank {

bool Presentation::orientable() const {
    for (const auto& f : faces)
        for (int m : f)
            if (m < 0) return false;
    return true;
}

void Presentation::validate() const {
    int count[9] = {0};
    for (const auto& f : faces)
        for (int m : f) {
            int l = std::abs(m);
            if (l < 1 || l > 8) throw std::invalid_argument("letter out of range 1..8");
            count[l]++;
        }
    for (int l = 1; l <= 8; l++)
        if (count[l] != 3)
            throw std::invalid_argument("letter " + std::to_string(l) + " occurs " +
                                        std::to_string(count[l]) + " times, expected 3");
}

std::string Presentation::to_string() const {
    std::ostringstream out;
    out << "[";
    for (int f = 0; f < 8; f++) {
        out << (f ? ",[" : "[") << faces[f][0] << "," << faces[f][1] << "," << faces[f][2] << "]";
    }
    out << "]";
    return out.str();
}

Presentation parse_presentation(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("faces")) throw std::invalid_argument("missing \"faces\" key");
    const auto& fs = j["faces"];
    if (!fs.is_array() || fs.size() != 8)
        throw std::invalid_argument("expected exactly 8 faces");
    Presentation p;
    for (int f = 0; f < 8; f++) {
        if (!fs[f].is_array() || fs[f].size() != 3)
            throw std::invalid_argument("face must be a triple");
        for (int k = 0; k < 3; k++) p.faces[f][k] = fs[f][k].get<int>();
    }
    p.validate();
    return p;
}

int germ_flat(int letter) { return letter - 1; }
int germ_sharp(int letter) { return 8 + letter - 1; }
int germ_in(int m) { return m > 0 ? germ_flat(m) : germ_sharp(-m); }
int germ_out(int m) { return m > 0 ? germ_sharp(m) : germ_flat(-m); }

LinkGraph link_of(const Presentation& p, bool* simple) {
    p.validate();
    LinkGraph g(16);
    g.labels.resize(16);
    for (int l = 1; l <= 8; l++) {
        g.labels[germ_flat(l)] = std::to_string(l) + "b";
        g.labels[germ_sharp(l)] = std::to_string(l) + "s";
    }
    bool ok = true;
    for (const auto& f : p.faces)
        for (int k = 0; k < 3; k++) {
            // the boundary of face [x,y,z] is traversed z, y, x (the face
            // imposes the relation a_z a_y a_x = 1), so the corner between
            // sides k and k+1 joins the arrival germ of f[k+1] with the
            // departure germ of f[k]
            int u = germ_in(f[(k + 1) % 3]), v = germ_out(f[k]);
            if (u == v || g.has_edge(u, v)) {
                ok = false;  // self-loop or parallel edge, collapsed
                continue;
            }
            g.add_edge(u, v);
        }
    if (simple) *simple = ok;
    return g;
}

bool is_rank74(const Presentation& p) {
    bool simple = false;
    LinkGraph g = link_of(p, &simple);
    return simple && is_ample(g);
}

namespace {

std::array<int, 3> rotation_min(std::array<int, 3> f) {
    std::array<int, 3> best = f;
    for (int r = 1; r < 3; r++) {
        std::array<int, 3> rot{f[r], f[(r + 1) % 3], f[(r + 2) % 3]};
        best = std::min(best, rot);
    }
    return best;
}

Presentation normalize(const Presentation& p) {
    Presentation q;
    for (int f = 0; f < 8; f++) q.faces[f] = rotation_min(p.faces[f]);
    std::sort(q.faces.begin(), q.faces.end());
    return q;
}

}  // namespace

Presentation canonical_presentation(const Presentation& p) {
    std::array<int, 8> perm{1, 2, 3, 4, 5, 6, 7, 8};
    Presentation best;
    bool have = false;
    do {
        Presentation q;
        for (int f = 0; f < 8; f++)
            for (int k = 0; k < 3; k++) {
                int m = p.faces[f][k];
                q.faces[f][k] = m > 0 ? perm[m - 1] : -perm[-m - 1];
            }
        q = normalize(q);
        if (!have || q.faces < best.faces) {
            best = q;
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool presentations_isomorphic(const Presentation& p, const Presentation& q) {
    return canonical_presentation(p) == canonical_presentation(q);
}

int euler_characteristic(const Presentation& p) {
    p.validate();
    return 1 - 8 + 8;
}

Presentation mirror_presentation(const Presentation& p) {
    Presentation m = p;
    for (auto& f : m.faces) std::swap(f[1], f[2]);
    return m;
}

AbelianGroup h1_of_complex(const Presentation& p) {
    p.validate();
    // boundary map faces -> edges; since there is a single vertex, H1 is its
    // cokernel
    IntMatrix d2(8, 8);
    for (int f = 0; f < 8; f++)
        for (int m : p.faces[f]) d2.at(std::abs(m) - 1, f) += m > 0 ? 1 : -1;
    return cokernel(d2);
}

namespace {

// incremental link state for the classification searches: edges are added as
// corners become determined, rejecting parallels (2-cycles) and 4-cycles
struct LinkState {
    std::array<uint32_t, 16> adj{};

    bool try_add(int u, int v) {
        if (u == v) return false;
        if ((adj[u] >> v) & 1u) return false;  // parallel edge
        // a 4-cycle through (u,v) is a path u-w-x-v with the new edge
        for (uint32_t mw = adj[u]; mw; mw &= mw - 1) {
            int w = __builtin_ctz(mw);
            if (adj[w] & adj[v] & ~(1u << u)) return false;
        }
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
        return true;
    }
    void remove(int u, int v) {
        adj[u] &= ~(1u << v);
        adj[v] &= ~(1u << u);
    }
};

struct ClassCollector {
    std::set<std::array<std::array<int, 3>, 8>> seen;
    std::vector<ComplexClass> classes;

    void offer(const Presentation& p) {
        if (!is_rank74(p)) return;
        Presentation c = canonical_presentation(p);
        if (!seen.insert(c.faces).second) return;
        ComplexClass cc;
        cc.canonical = c;
        for (const auto& f : c.faces) {
            bool adjid = f[0] == f[1] || f[1] == f[2] || f[2] == f[0];
            if (adjid) cc.adjacent_identifications++;
        }
        static const char* tags[] = {"I", "II", "III", "IV", "V"};
        cc.type_tag = tags[std::min(cc.adjacent_identifications, 4)];
        cc.orientable = c.orientable();
        classes.push_back(cc);
    }

    std::vector<ComplexClass> finish() {
        std::sort(classes.begin(), classes.end(), [](const ComplexClass& a, const ComplexClass& b) {
            if (a.adjacent_identifications != b.adjacent_identifications)
                return a.adjacent_identifications < b.adjacent_identifications;
            return a.canonical.faces < b.canonical.faces;
        });
        return classes;
    }
};

// Full mode: backtracking over lists that are sorted, face-wise rotation
// minimal, and restricted-growth (letters first appear in increasing order).
// Every canonical form has this shape, so the search is exhaustive.
struct FullSearch {
    ClassCollector out;
    Presentation p{};
    LinkState link;
    int count[9] = {0};
    int maxUsed = 0;

    void run() { face(0); }

    void face(int f) {
        if (f == 8) {
            out.offer(p);
            return;
        }
        std::array<int, 3> prev = f > 0 ? p.faces[f - 1] : std::array<int, 3>{0, 0, 0};
        for (int a = 1; a <= 8; a++) {
            if (count[a] >= 3 || a > maxUsed + 1) continue;
            int savedMaxA = maxUsed;
            count[a]++;
            maxUsed = std::max(maxUsed, a);
            for (int b = 1; b <= 8; b++) {
                if (count[b] >= 3 || b > maxUsed + 1) continue;
                int savedMaxB = maxUsed;
                count[b]++;
                maxUsed = std::max(maxUsed, b);
                if (!link.try_add(germ_flat(a), germ_sharp(b))) {
                    count[b]--;
                    maxUsed = savedMaxB;
                    continue;
                }
                for (int c = 1; c <= 8; c++) {
                    if (count[c] >= 3 || c > maxUsed + 1) continue;
                    std::array<int, 3> face{a, b, c};
                    if (rotation_min(face) != face) continue;  // not rotation minimal
                    if (face < prev) continue;                 // keep faces sorted
                    int savedMaxC = maxUsed;
                    count[c]++;
                    maxUsed = std::max(maxUsed, c);
                    if (link.try_add(germ_flat(b), germ_sharp(c))) {
                        if (link.try_add(germ_flat(c), germ_sharp(a))) {
                            p.faces[f] = face;
                            this->face(f + 1);
                            link.remove(germ_flat(c), germ_sharp(a));
                        }
                        link.remove(germ_flat(b), germ_sharp(c));
                    }
                    count[c]--;
                    maxUsed = savedMaxC;
                }
                link.remove(germ_flat(a), germ_sharp(b));
                count[b]--;
                maxUsed = savedMaxB;
            }
            count[a]--;
            maxUsed = savedMaxA;
        }
    }
};

// Six-cases mode: the seed patterns with fixed cells (0 marks a free cell).
const std::array<std::array<std::array<int, 3>, 8>, 6> kCasePatterns = {{
    {{{1, 2, 3}, {4, 4, 5}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}},
    {{{1, 2, 3}, {4, 5, 6}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}},
    {{{1, 2, 3}, {1, 3, 2}, {1, 4, 0}, {2, 0, 0}, {3, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
    {{{1, 2, 3}, {1, 3, 4}, {3, 5, 0}, {1, 0, 0}, {2, 0, 0}, {2, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
    {{{1, 2, 3}, {1, 3, 4}, {3, 5, 0}, {2, 1, 0}, {2, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
    {{{1, 2, 3}, {1, 3, 4}, {2, 1, 0}, {3, 2, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
}};

struct CaseSearch {
    ClassCollector& out;
    Presentation p{};
    std::array<std::array<bool, 3>, 8> fixed{};
    std::vector<std::pair<int, int>> freeCells;
    LinkState link;
    int count[9] = {0};

    int freshMask = 0;  // letters absent from the seed: interchangeable
    int usedFresh = 0;

    CaseSearch(ClassCollector& collector, const std::array<std::array<int, 3>, 8>& pattern)
        : out(collector) {
        for (int f = 0; f < 8; f++)
            for (int k = 0; k < 3; k++) {
                int m = pattern[f][k];
                p.faces[f][k] = m;
                fixed[f][k] = m != 0;
                if (m != 0) count[m]++;
                else freeCells.push_back({f, k});
            }
        for (int m = 1; m <= 8; m++)
            if (count[m] == 0) freshMask |= 1 << m;
        // edges among already-fixed corners
        for (int f = 0; f < 8; f++)
            for (int k = 0; k < 3; k++)
                if (fixed[f][k] && fixed[f][(k + 1) % 3]) {
                    bool ok = link.try_add(germ_flat(p.faces[f][k]),
                                           germ_sharp(p.faces[f][(k + 1) % 3]));
                    if (!ok) throw std::logic_error("seed pattern rejected by link pruning");
                }
    }

    bool cell_filled(int f, int k) const {
        return fixed[f][k] || p.faces[f][k] != 0;
    }

    void fill(size_t idx) {
        if (idx == freeCells.size()) {
            out.offer(p);
            return;
        }
        auto [f, k] = freeCells[idx];
        int prevK = (k + 2) % 3, nextK = (k + 1) % 3;
        for (int m = 1; m <= 8; m++) {
            if (count[m] >= 3) continue;
            // fresh letters are interchangeable: use them in increasing order
            bool fresh = (freshMask >> m) & 1 && !((usedFresh >> m) & 1);
            if (fresh && (freshMask & ~usedFresh & ((1 << m) - 1))) continue;
            if (fresh) usedFresh |= 1 << m;
            p.faces[f][k] = m;
            count[m]++;
            // corners with already-known partners become checkable now
            int added = 0;
            bool ok = true;
            if (cell_filled(f, prevK)) {
                ok = link.try_add(germ_flat(p.faces[f][prevK]), germ_sharp(m));
                if (ok) added |= 1;
            }
            if (ok && cell_filled(f, nextK)) {
                ok = link.try_add(germ_flat(m), germ_sharp(p.faces[f][nextK]));
                if (ok) added |= 2;
            }
            if (ok) fill(idx + 1);
            if (added & 2) link.remove(germ_flat(m), germ_sharp(p.faces[f][nextK]));
            if (added & 1) link.remove(germ_flat(p.faces[f][prevK]), germ_sharp(m));
            count[m]--;
            if (fresh) usedFresh &= ~(1 << m);
            p.faces[f][k] = 0;
        }
    }
};

}  // namespace

std::vector<ComplexClass> classify_orientable(ClassifyMode mode) {
    if (mode == ClassifyMode::Full) {
        FullSearch s;
        s.run();
        return s.out.finish();
    }
    ClassCollector out;
    for (const auto& pattern : kCasePatterns) {
        CaseSearch s(out, pattern);
        s.fill(0);
    }
    return out.finish();
}

namespace {

std::vector<PresetComplex> make_presets() {
    auto P = [](std::initializer_list<std::initializer_list<int>> fs) {
        Presentation p;
        int f = 0;
        for (const auto& face : fs) {
            int k = 0;
            for (int m : face) p.faces[f][k++] = m;
            f++;
        }
        p.validate();
        return p;
    };
    std::vector<PresetComplex> v;
    v.push_back({"V0",
                 P({{1, 2, 6}, {2, 3, 7}, {3, 4, 8}, {4, 5, 1}, {5, 6, 2}, {6, 7, 3}, {7, 8, 4}, {8, 1, 5}}),
                 2,
                 {"tst2s't = st2st2s'ts", "st's't'2s = tst2s'tsst"},
                 {0, {15}}});
    v.push_back({"V0_1",
                 P({{1, 2, 3}, {1, 4, 5}, {1, 6, 4}, {2, 6, 8}, {2, 8, 5}, {3, 6, 7}, {3, 7, 5}, {4, 8, 7}}),
                 3,
                 {"u = vw'v'uw", "uv = wvwuw", "uvuw = wuvu"},
                 {2, {3}}});
    v.push_back({"V0_2",
                 P({{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 8, 5}, {3, 6, 8}, {3, 7, 5}, {4, 8, 7}}),
                 3,
                 {"uv = wvwuw", "wu = uvwv2", "v = uvw'uwu"},
                 {0, {3, 3, 3}}});
    v.push_back({"V0_2x",
                 P({{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 6, 4}, {2, 8, 5}, {3, 6, 8}, {3, 7, 5}, {4, 8, 7}}),
                 3,
                 {"uv = wvwuw", "wu = vuvwv", "wu2v = vu'w"},
                 {0, {3, 3, 3}}});
    v.push_back({"V1",
                 P({{1, 1, 2}, {1, 3, 4}, {2, 5, 6}, {2, 7, 8}, {3, 5, 7}, {3, 6, 5}, {4, 6, 8}, {4, 8, 7}}),
                 2,
                 {"s4ts'3ts = ts2t", "t = s2ts't's2t's'2t2s2"},
                 {1, {3}}});
    v.push_back({"V2_1",
                 P({{1, 1, 3}, {2, 2, 3}, {1, 4, 5}, {2, 7, 8}, {3, 5, 7}, {4, 6, 8}, {4, 7, 6}, {5, 8, 6}}),
                 2,
                 {"st2 = tst2s'ts2", "ts't2 = s3ts2t'2st'sts2"},
                 {0, {24}}});
    v.push_back({"V2_2",
                 P({{1, 1, 3}, {2, 2, 4}, {3, 7, 4}, {1, 4, 6}, {2, 5, 3}, {5, 7, 8}, {5, 8, 6}, {6, 8, 7}}),
                 2,
                 {"s2 = t2s4t'3st", "st = t2s'2t'4s3"},
                 {0, {3, 3}}});
    v.push_back({"V2_3",
                 P({{1, 1, 3}, {2, 2, 4}, {1, 5, 2}, {3, 6, 4}, {3, 7, 6}, {4, 6, 8}, {5, 7, 8}, {5, 8, 7}}),
                 2,
                 {"s2t3s3t2 = t2s2", "t2 = s2t2s2t2s'2ts"},
                 {1, {3}}});
    v.push_back({"V2_4",
                 P({{1, 1, 3}, {2, 2, 4}, {1, 5, 2}, {3, 6, 5}, {3, 7, 8}, {4, 5, 8}, {4, 6, 7}, {6, 8, 7}}),
                 2,
                 {"s2t2sts2 = t3st", "s = t3stst's2tst"},
                 {0, {24}}});
    v.push_back({"V3",
                 P({{1, 1, 4}, {2, 2, 4}, {3, 3, 5}, {1, 3, 6}, {2, 5, 7}, {4, 7, 8}, {5, 8, 6}, {6, 8, 7}}),
                 2,
                 {"st3st = t2sts2", "s2 = t2sts'2ts't2st3"},
                 {0, {6}}});
    v.push_back({"V4_1",
                 P({{1, 1, 5}, {2, 2, 5}, {3, 3, 6}, {4, 4, 6}, {1, 3, 8}, {2, 7, 4}, {5, 8, 7}, {6, 7, 8}}),
                 3,
                 {"v2 = u2", "w2uw = uwu2", "w2vuwvu3wu2"},
                 {0, {2, 2, 12}}});
    v.push_back({"V4_2",
                 P({{1, 1, 5}, {2, 2, 5}, {3, 3, 6}, {4, 4, 7}, {1, 3, 8}, {2, 7, 6}, {4, 8, 6}, {5, 8, 7}}),
                 2,
                 {"t2st3ststs2", "t2s'2t's't2 = s3ts2"},
                 {0, {66}}});
    v.push_back({"Vbar",
                 P({{3, -1, 2}, {3, -2, 4}, {2, 6, -3}, {5, -1, -6}, {7, -4, 5}, {8, -6, 7}, {5, 8, 7}, {1, 4, -8}}),
                 2,
                 {"s2t = t2s2t2s't'st's", "t = sts'ts't2s't'2st's"},
                 // the printed face list gives Z/8; the printed fundamental
                 // group abelianizes to Z.  The two published data items are
                 // inconsistent; we store what the face list yields.
                 {0, {8}}});
    return v;
}

}  // namespace

const std::vector<PresetComplex>& preset_complexes() {
    static const std::vector<PresetComplex> presets = make_presets();
    return presets;
}

const PresetComplex& preset(const std::string& name) {
    for (const auto& p : preset_complexes())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace polyrank
