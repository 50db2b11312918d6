#pragma once

#include "polyrank/cover.hpp"

#include <vector>

namespace polyrank {

// Locally isometric embedding of a triangulated Euclidean region (hexagon,
// strip, sector or disk support) into a developed ball, recorded by its image.
struct FlatPatch {
    std::vector<int> triangles;  // sorted cover triangle ids (the support)
    // strips only:
    int period = 0;              // minimal period in edges
    std::vector<int> opposite;   // opposite boundary word over one period
};

// All flat hexagons of simplicial radius n centered at vertex A, up to
// rotation (distinct images counted once).  n = 0 yields the single empty
// patch (the vertex itself).
std::vector<FlatPatch> flat_disks_at(const CoverBall& b, int A, int n);

// Finite-scale mesoscopic profile.  Radii live on the grid r = m*(sqrt(3)/6),
// the set of radii where disk supports can change; counts[i] is the number of
// distinct flat-disk supports of radius grid[i] centered at A that admit no
// flat extension to radius grid[i] + margin (margin in the same Euclidean
// units, converted to the grid by rounding up).
struct Profile {
    int center = 0;
    int margin = 0;
    std::vector<int> grid;    // multiples of sqrt(3)/6
    std::vector<int> counts;  // extension-free supports per radius
    std::vector<int> total;   // all flat-disk supports per radius (margin 0)
};
Profile mesoscopic_profile(const CoverBall& b, int A, const std::vector<int>& grid,
                           int margin = 2);

// All periodic flat strips of the given height whose lower boundary is the
// periodic geodesic boundary.letters^infinity through boundary.start, with
// period at most periodBound edges.  The enumeration window is centered on
// the start vertex so that a ball of radius |period|/2 + height + 1 around it
// suffices.
std::vector<FlatPatch> strips_on_geodesic(const CoverBall& b, const Path& boundary,
                                          int height, int periodBound);

// Number of flat equilateral triangles (filled, either side) whose base is
// the given geodesic edge path.  The base length must be positive.
int flat_triangle_count(const CoverBall& b, const Path& base);

// true iff all products of 1..L factors from the word list trace to pairwise
// distinct endpoints of the ball.
bool free_semigroup_probe(const CoverBall& b,
                          const std::vector<std::vector<int>>& words, int L);
// Ball-free variant: distinctness is certified by geodesic words (two
// distinct locally geodesic words have distinct endpoints) and equality by
// on-demand development; throws BudgetExceeded when a pair stays undecided.
bool free_semigroup_probe(const Presentation& p,
                          const std::vector<std::vector<int>>& words, int L,
                          long long budget = kDefaultBudget);

// Exponential mesoscopic rank witness: reconstructs, inside the canonical
// flat plane on the hexagonal geodesic of the first ladder complex, the
// sector at distance k bracketed by stacked strip choices on both boundary
// lines, realizes the resulting flat disks of radius k, and verifies that
// they are pairwise distinct and admit no flat extension by the margin.
struct MesoCheck {
    int k = 0;
    int mu = 0;               // ceil(k*(2/sqrt(3) - 1))
    long long bound = 0;      // 2^(2*mu - 4)
    int stacksLow = 0;        // stacked strip choices on the hexagonal line
    int stacksHigh = 0;       // stacked strip choices on the period-6 line
    int constructed = 0;      // distinct flat disk supports realized
    int unextendable = 0;     // those admitting no flat extension by the margin
    bool pass = false;        // unextendable >= bound
};
MesoCheck meso_lower_bound_check(int k, long long budget = kDefaultBudget);

}  // namespace polyrank
