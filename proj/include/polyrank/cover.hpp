#pragma once

#include "polyrank/complexes.hpp"
#include "polyrank/linkgraph.hpp"

#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyrank {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Triangle cell realizing a face [x,y,z], whose boundary is traversed z, y, x
// (the face imposes the relation a_z a_y a_x = 1).  v[k] is the vertex at
// corner k, the corner between the arriving side f[k+1] and the departing
// side f[k]; side k runs from v[k] to v[(k+2)%3] along letter faces[face][k].
struct Triangle {
    std::array<int, 3> v;
    int face;
};

inline constexpr int kOutOfBall = -1;
inline constexpr uint32_t kAllCorners = 0xFFFFFF;  // 24 face corners

// Developed ball of the universal cover of a one-vertex presentation.
// Vertices are indexed by (distance, discovery order); vertex 0 is the base.
// Every vertex has at most one outgoing and one incoming edge per letter;
// corners is a 24-bit mask of attached (face, corner) triangle corners, full
// exactly for vertices with complete links.
struct CoverBall {
    Presentation pres;
    LinkGraph link;                         // link_of(pres)
    std::vector<std::vector<int>> linkDist; // all-pairs link distances
    int radius = 0;
    int base = 0;
    std::vector<std::array<int, 8>> out, in;  // -1 when absent
    std::vector<int> dist;
    std::vector<uint32_t> corners;
    std::vector<Triangle> triangles;
    std::vector<std::vector<int>> trisAt;     // triangle ids through a vertex
    std::vector<int> sphere_sizes;            // sizes of spheres 0..max dist

    int vertex_count() const { return (int)out.size(); }
    long long edge_count() const;
    bool complete(int v) const { return corners[v] == kAllCorners; }
    // follow signed letter m from v; kOutOfBall when the edge is absent
    int step(int v, int m) const {
        int l = std::abs(m) - 1;
        return m > 0 ? out[v][l] : in[v][l];
    }
};

// default vertex budget; override via the budget argument or POLYRANK_BUDGET
inline constexpr long long kDefaultBudget = 10'000'000;

CoverBall develop_ball(const Presentation& p, int R, long long budget = kDefaultBudget);

// endpoint of the edge-path spelling `word` from base, or kOutOfBall
int trace_word(const CoverBall& b, const std::vector<int>& word);

struct Path {
    int start = 0;
    std::vector<int> letters;  // signed
};

// true iff the path exists in the ball and at every interior vertex the
// entering and leaving germs are at link distance >= 3 (angle >= pi)
bool is_geodesic(const CoverBall& b, const Path& path);

// cyclic words of analytic geodesics, canonical (lex-least over rotation and
// reversal-with-sign-flip), one representative per {ring, reversed ring} pair
using Ring = std::vector<int>;
std::vector<Ring> rings(const Presentation& p);

// exact angular residual of a disk (simply connected triangle subcomplex) in
// units of pi/3; a genuine disk yields exactly 6 (= 2 pi).  Throws
// std::invalid_argument when the subcomplex is not a disk with simple
// boundary.
int gauss_bonnet_audit(const CoverBall& b, const std::vector<int>& triangleIds);

// random simply-connected disk of the requested size grown by boundary
// accretion; used by the audit property tests
std::vector<int> grow_random_disk(const CoverBall& b, std::mt19937& rng, int triangles);

namespace detail {
struct Dev;
}

// On-demand development of the universal cover: vertices are completed lazily
// along traced paths instead of level by level.  Every vertex returned by
// trace() has a complete link, so two returned ids denote the same cover
// vertex if and only if they resolve to the same id (no late merges).  This
// makes word comparisons sound far beyond any affordable full-ball radius.
class LazyCover {
  public:
    explicit LazyCover(const Presentation& p, long long budget = kDefaultBudget);
    ~LazyCover();
    LazyCover(LazyCover&&) noexcept;
    LazyCover& operator=(LazyCover&&) noexcept;

    const Presentation& presentation() const;
    int base();                       // current id of the base vertex
    int find(int v);                  // resolve an id after later merges
    void ensure_complete(int v);      // attach all 24 triangle corners at v
    int step(int v, int m);           // follow signed letter; -1 if absent
    // trace from `from` (default base), completing every visited vertex
    int trace(const std::vector<int>& word, std::vector<int>* visited = nullptr);
    int trace_from(int from, const std::vector<int>& word, std::vector<int>* visited = nullptr);
    // complete every vertex within the given edge distance of the seeds;
    // forces the identifications supported by that neighborhood
    void complete_neighborhood(const std::vector<int>& seeds, int depth);
    // vertices of the triangle of face f with corner k at v (completes v)
    std::array<int, 3> triangle_at(int v, int f, int k);
    long long vertices_created() const;

  private:
    std::unique_ptr<detail::Dev> impl;
};

// true iff both words trace to the same vertex of the universal cover;
// exact in both directions (uses LazyCover completion)
bool words_equal(const Presentation& p, const std::vector<int>& u,
                 const std::vector<int>& v, long long budget = kDefaultBudget);

// geodesy of an edge path is a purely local link condition, so it can be
// decided without developing any ball
bool is_geodesic_word(const Presentation& p, const std::vector<int>& letters);

// "6 1 -5 -1" -> {6, 1, -5, -1}
std::vector<int> parse_word(const std::string& text);
std::string word_to_string(const std::vector<int>& word);

}  // namespace polyrank
