#pragma once

#include <string>
#include <vector>

namespace polyrank {

// Dense exact-integer matrix.  Sizes here are tiny (8x8 boundary maps), the
// point is exactness and checkable unimodular transforms.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<long long> entries;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), entries((size_t)r * c, 0) {}
    long long& at(int r, int c) { return entries[(size_t)r * cols + c]; }
    long long at(int r, int c) const { return entries[(size_t)r * cols + c]; }
    static IntMatrix identity(int n);
    bool operator==(const IntMatrix& o) const = default;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
long long determinant(const IntMatrix& m);  // exact, via fraction-free elimination
bool is_unimodular(const IntMatrix& m);

struct SmithResult {
    std::vector<long long> divisors;  // d1 | d2 | ..., nonnegative, length min(r,c)
    IntMatrix left, right;            // unimodular, left * m * right = diag(divisors)
    // exact inverses of left and right: the unimodularity certificate
    // (left * left_inv = I proves det(left) = +-1 over Z)
    IntMatrix left_inv, right_inv;
};
SmithResult smith_normal_form(const IntMatrix& m);

// Finitely generated abelian group in canonical form: Z^free_rank + sum Z/d_i
// with d1 | d2 | ..., each d_i >= 2.
struct AbelianGroup {
    int free_rank = 0;
    std::vector<long long> torsion;
    bool operator==(const AbelianGroup& o) const = default;
    std::string to_string() const;  // e.g. "Z/3 x Z^2", "0" for trivial
};

// cokernel of m: Z^cols -> Z^rows
AbelianGroup cokernel(const IntMatrix& m);

// Word syntax: generators a..z; inverse by apostrophe or uppercase; optional
// decimal exponent after a letter (possibly negative); "lhs=rhs" denotes the
// relator lhs * rhs^-1.  Returns exponent vector of length ngens, generators
// in alphabetical order of the base letters used across the whole input.
std::vector<long long> exponent_vector(const std::string& word, int ngens);
AbelianGroup abelianization(int generators, const std::vector<std::string>& relators);

}  // namespace polyrank
