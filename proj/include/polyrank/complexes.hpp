#pragma once

#include "polyrank/homology.hpp"
#include "polyrank/linkgraph.hpp"

#include <array>
#include <string>
#include <vector>

namespace polyrank {

// One-vertex triangle complex with 8 edge loops and 8 triangular faces.
// A face [x,y,z] glues its sides to loops x, y, z in order; a negative entry
// traverses that loop against its orientation.  Each letter 1..8 occurs
// exactly 3 times over all faces.
struct Presentation {
    std::array<std::array<int, 3>, 8> faces{};

    bool orientable() const;  // true iff all entries positive
    void validate() const;    // throws std::invalid_argument on bad data
    bool operator==(const Presentation& o) const { return faces == o.faces; }
    std::string to_string() const;  // "[[1,2,6],[2,3,7],...]"
};

Presentation parse_presentation(const std::string& text);  // JSON {"faces": [...]}

// Link of the unique vertex: 16 germs i-flat (arrival end of loop i) and
// i-sharp (departure end), indices flat(i) = i-1, sharp(i) = 8+i-1.  The
// boundary of a face [x,y,z] is traversed z, y, x (the face imposes the
// relation a_z a_y a_x = 1 on the edge-loop generators), so the corner
// between sides k and k+1 contributes the edge {germ_in(f[k+1]),
// germ_out(f[k])} where germ_in(m) = m>0 ? flat : sharp and germ_out(m) =
// m>0 ? sharp : flat.  Parallel edges or self-loops (possible for degenerate
// presentations) are collapsed; *simple reports whether any occurred.
int germ_flat(int letter);
int germ_sharp(int letter);
int germ_in(int signed_letter);
int germ_out(int signed_letter);
LinkGraph link_of(const Presentation& p, bool* simple = nullptr);

// true iff the link is simple, connected, trivalent, of girth exactly 6
bool is_rank74(const Presentation& p);

// Canonical representative under: permutation of letters 1..8 (signs kept),
// cyclic rotation within each face, reordering of faces.  Face reversal is
// deliberately not an equivalence.
Presentation canonical_presentation(const Presentation& p);
bool presentations_isomorphic(const Presentation& p, const Presentation& q);

int euler_characteristic(const Presentation& p);

// All faces reversed.  For a connected complex this re-encoding composes a
// legal reversal-with-inversion of every face with a reorientation of all 8
// loops, so it presents the same complex even though it generally is not
// isomorphic under presentations_isomorphic (which excludes reversal).
Presentation mirror_presentation(const Presentation& p);

struct ComplexClass {
    Presentation canonical;
    int adjacent_identifications = 0;  // faces of shape [x,x,.], 0..4
    std::string type_tag;              // "I".."V"
    bool orientable = true;
};

// Exhaustive classification of orientable rank-7/4 complexes.  Mode "full" is
// a single pruned backtracking search over canonical-minimal lists; mode
// "six-cases" reproduces the split into six seed patterns.  Both must agree.
enum class ClassifyMode { Full, SixCases };
std::vector<ComplexClass> classify_orientable(ClassifyMode mode = ClassifyMode::Full);

AbelianGroup h1_of_complex(const Presentation& p);

// The published presentations, with fundamental group data where available.
struct PresetComplex {
    std::string name;            // "V0", "V0_1", ..., "Vbar"
    Presentation pres;
    int pi1_generators = 0;      // 0 if no presentation is recorded
    std::vector<std::string> pi1_relators;
    AbelianGroup h1;
};
const std::vector<PresetComplex>& preset_complexes();
const PresetComplex& preset(const std::string& name);  // throws if unknown

}  // namespace polyrank
