#include "polyrank/homology.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polyrank {

namespace {

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
    return r;
}

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
    return r;
}

}  // namespace

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("dimension mismatch");
    // accumulate in 128 bits: intermediate products may exceed 64 bits even
    // when the result fits (e.g. transform times its inverse)
    IntMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < b.cols; j++) {
            __int128 s = 0;
            for (int k = 0; k < a.cols; k++) s += (__int128)a.at(i, k) * b.at(k, j);
            if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("integer overflow");
            c.at(i, j) = (long long)s;
        }
    return c;
}

long long determinant(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    // Bareiss fraction-free elimination, exact over long long
    IntMatrix a = m;
    int n = m.rows;
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; k++) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; i++)
                if (a.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; j++) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++)
            for (int j = k + 1; j < n; j++)
                a.at(i, j) = (checked_mul(a.at(i, j), a.at(k, k)) -
                              checked_mul(a.at(i, k), a.at(k, j))) /
                             prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

namespace {

// determinant modulo a prime, by Gaussian elimination over Z/p
long long det_mod(const IntMatrix& m, long long p) {
    int n = m.rows;
    std::vector<long long> a((size_t)n * n);
    for (size_t i = 0; i < a.size(); i++) a[i] = ((m.entries[i] % p) + p) % p;
    auto at = [&](int i, int j) -> long long& { return a[(size_t)i * n + j]; };
    auto powmod = [&](long long b, long long e) {
        long long r = 1;
        for (; e; e >>= 1, b = (__int128)b * b % p)
            if (e & 1) r = (__int128)r * b % p;
        return r;
    };
    long long det = 1;
    for (int k = 0; k < n; k++) {
        int piv = -1;
        for (int i = k; i < n; i++)
            if (at(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = k; j < n; j++) std::swap(at(k, j), at(piv, j));
            det = p - det;
        }
        det = (__int128)det * at(k, k) % p;
        long long inv = powmod(at(k, k), p - 2);
        for (int i = k + 1; i < n; i++) {
            long long f = (__int128)at(i, k) * inv % p;
            if (f == 0) continue;
            for (int j = k; j < n; j++)
                at(i, j) = (at(i, j) - (__int128)f * at(k, j) % p + p) % p;
        }
    }
    return det % p;
}

}  // namespace

bool is_unimodular(const IntMatrix& m) {
    if (m.rows != m.cols) return false;
    // modular determinant over enough primes: the Hadamard bound caps |det|,
    // so residues 1 (resp. -1) modulo primes of product beyond twice the
    // bound certify det = 1 (resp. -1) without big-integer arithmetic
    long double hadamard = 1.0L;
    for (int i = 0; i < m.rows; i++) {
        long double s = 0;
        for (int j = 0; j < m.cols; j++)
            s += (long double)m.at(i, j) * (long double)m.at(i, j);
        hadamard *= sqrtl(s);
        if (s == 0) return false;
    }
    static const std::vector<long long> primes = [] {
        std::vector<long long> ps;
        for (long long c = (1LL << 31) - 1; (int)ps.size() < 24; c -= 2) {
            bool prime = true;
            for (long long d = 3; d * d <= c && prime; d += 2) prime = c % d != 0;
            if (prime) ps.push_back(c);
        }
        return ps;
    }();
    long double prod = 1.0L;
    int sign = 0;  // +1, -1, or 0 when still undetermined by the first prime
    for (long long p : primes) {
        long long d = det_mod(m, p);
        int s = d == 1 ? 1 : (d == p - 1 ? -1 : 0);
        if (s == 0) return false;
        if (sign == 0) sign = s;
        if (s != sign) return false;
        prod *= (long double)p;
        if (prod > 2.0L * hadamard + 2.0L) return true;
    }
    return false;  // entries too large for the prime pool; cannot certify
}

namespace {

// dense 128-bit working matrix for SNF: transform entries can exceed 64 bits
// mid-computation even when inputs and results are small
struct Mat128 {
    int rows, cols;
    std::vector<__int128> e;
    Mat128(int r, int c) : rows(r), cols(c), e((size_t)r * c, 0) {}
    __int128& at(int r, int c) { return e[(size_t)r * cols + c]; }
    static Mat128 identity(int n) {
        Mat128 m(n, n);
        for (int i = 0; i < n; i++) m.at(i, i) = 1;
        return m;
    }
    IntMatrix to_int() const {
        IntMatrix m(rows, cols);
        for (size_t i = 0; i < e.size(); i++) {
            if (e[i] > INT64_MAX || e[i] < INT64_MIN) throw std::overflow_error("integer overflow");
            m.entries[i] = (long long)e[i];
        }
        return m;
    }
};

__int128 iabs128(__int128 x) { return x < 0 ? -x : x; }

// nearest-integer quotient (d > 0): keeps remainders at most d/2, which
// bounds the elimination quotients and the transform entry growth
__int128 div_nearest(__int128 x, __int128 d) {
    __int128 q = x / d, r = x % d;
    if (2 * r > d) q++;
    if (2 * r < -d) q--;
    return q;
}

__int128 mul128(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
    return r;
}

__int128 sub128(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
    return r;
}

__int128 add128(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
    return r;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    int r = m.rows, c = m.cols;
    Mat128 a(r, c);
    for (size_t i = 0; i < m.entries.size(); i++) a.e[i] = m.entries[i];
    Mat128 L = Mat128::identity(r), Li = Mat128::identity(r);
    Mat128 R = Mat128::identity(c), Ri = Mat128::identity(c);

    // row i -= q * row j on a and L; inverse op on Li is col j += q * col i
    auto row_op = [&](int i, int j, __int128 q) {
        for (int k = 0; k < c; k++) a.at(i, k) = sub128(a.at(i, k), mul128(q, a.at(j, k)));
        for (int k = 0; k < r; k++) L.at(i, k) = sub128(L.at(i, k), mul128(q, L.at(j, k)));
        for (int k = 0; k < r; k++) Li.at(k, j) = add128(Li.at(k, j), mul128(q, Li.at(k, i)));
    };
    // col i -= q * col j on a and R; inverse op on Ri is row j += q * row i
    auto col_op = [&](int i, int j, __int128 q) {
        for (int k = 0; k < r; k++) a.at(k, i) = sub128(a.at(k, i), mul128(q, a.at(k, j)));
        for (int k = 0; k < c; k++) R.at(k, i) = sub128(R.at(k, i), mul128(q, R.at(k, j)));
        for (int k = 0; k < c; k++) Ri.at(j, k) = add128(Ri.at(j, k), mul128(q, Ri.at(i, k)));
    };
    auto swap_rows = [&](int i, int j) {
        for (int k = 0; k < c; k++) std::swap(a.at(i, k), a.at(j, k));
        for (int k = 0; k < r; k++) std::swap(L.at(i, k), L.at(j, k));
        for (int k = 0; k < r; k++) std::swap(Li.at(k, i), Li.at(k, j));
    };
    auto swap_cols = [&](int i, int j) {
        for (int k = 0; k < r; k++) std::swap(a.at(k, i), a.at(k, j));
        for (int k = 0; k < c; k++) std::swap(R.at(k, i), R.at(k, j));
        for (int k = 0; k < c; k++) std::swap(Ri.at(i, k), Ri.at(j, k));
    };
    auto negate_row = [&](int i) {
        for (int k = 0; k < c; k++) a.at(i, k) = -a.at(i, k);
        for (int k = 0; k < r; k++) L.at(i, k) = -L.at(i, k);
        for (int k = 0; k < r; k++) Li.at(k, i) = -Li.at(k, i);
    };

    int t = 0;
    int nmin = std::min(r, c);
    while (t < nmin) {
        // pivot: least absolute nonzero entry in the remaining block
        int pi = -1, pj = -1;
        __int128 best = 0;
        for (int i = t; i < r; i++)
            for (int j = t; j < c; j++) {
                __int128 v = iabs128(a.at(i, j));
                if (v != 0 && (pi < 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // remaining block is zero
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);
        if (a.at(t, t) < 0) negate_row(t);

        bool clean = true;
        for (int i = t + 1; i < r; i++)
            if (a.at(i, t) != 0) {
                row_op(i, t, div_nearest(a.at(i, t), a.at(t, t)));
                if (a.at(i, t) != 0) clean = false;
            }
        for (int j = t + 1; j < c; j++)
            if (a.at(t, j) != 0) {
                col_op(j, t, div_nearest(a.at(t, j), a.at(t, t)));
                if (a.at(t, j) != 0) clean = false;
            }
        if (!clean) continue;  // repick pivot, entries shrank

        // pivot must divide everything below-right; if not, fold an offender in
        __int128 d = a.at(t, t);
        bool divides = true;
        for (int i = t + 1; i < r && divides; i++)
            for (int j = t + 1; j < c && divides; j++)
                if (a.at(i, j) % d != 0) {
                    row_op(t, i, -1);  // add row i to row t, creates a smaller remainder
                    divides = false;
                }
        if (divides) t++;
    }

    SmithResult res;
    res.divisors.assign(nmin, 0);
    for (int i = 0; i < nmin; i++) {
        if (a.at(i, i) > INT64_MAX) throw std::overflow_error("integer overflow");
        res.divisors[i] = (long long)a.at(i, i);
    }
    res.left = L.to_int();
    res.left_inv = Li.to_int();
    res.right = R.to_int();
    res.right_inv = Ri.to_int();
    return res;
}

std::string AbelianGroup::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (long long d : torsion) {
        if (!first) out << " x ";
        out << "Z/" << d;
        first = false;
    }
    if (free_rank > 0) {
        if (!first) out << " x ";
        out << "Z";
        if (free_rank > 1) out << "^" << free_rank;
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

AbelianGroup cokernel(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    AbelianGroup g;
    int nonzero = 0;
    for (long long d : s.divisors) {
        if (d == 0) continue;
        nonzero++;
        if (d > 1) g.torsion.push_back(d);
    }
    g.free_rank = m.rows - nonzero;
    return g;
}

std::vector<long long> exponent_vector(const std::string& word, int ngens) {
    std::vector<long long> ex(ngens, 0);
    int side = 1;  // flips to -1 after '=': lhs = rhs means lhs * rhs^-1
    size_t i = 0;
    while (i < word.size()) {
        char ch = word[i];
        if (std::isspace((unsigned char)ch)) {
            i++;
            continue;
        }
        if (ch == '=') {
            if (side < 0) throw std::invalid_argument("two '=' in word: " + word);
            side = -1;
            i++;
            continue;
        }
        int gen, sgn;
        if (ch >= 'a' && ch <= 'z') {
            gen = ch - 'a';
            sgn = 1;
        } else if (ch >= 'A' && ch <= 'Z') {
            gen = ch - 'A';
            sgn = -1;
        } else {
            throw std::invalid_argument("bad character in word: " + word);
        }
        i++;
        if (i < word.size() && word[i] == '\'') {
            sgn = -sgn;
            i++;
        }
        long long e = 1;
        if (i < word.size() && (std::isdigit((unsigned char)word[i]) ||
                                (word[i] == '-' && i + 1 < word.size() &&
                                 std::isdigit((unsigned char)word[i + 1])))) {
            size_t j = i;
            if (word[j] == '-') j++;
            while (j < word.size() && std::isdigit((unsigned char)word[j])) j++;
            e = std::stoll(word.substr(i, j - i));
            i = j;
        }
        if (gen >= ngens) throw std::invalid_argument("generator out of range in word: " + word);
        ex[gen] = checked_add(ex[gen], checked_mul((long long)side * sgn, e));
    }
    return ex;
}

AbelianGroup abelianization(int generators, const std::vector<std::string>& relators) {
    // map the distinct base letters used, in alphabetical order, to indices
    std::vector<bool> used(26, false);
    for (const auto& w : relators)
        for (char ch : w)
            if (std::isalpha((unsigned char)ch)) used[std::tolower((unsigned char)ch) - 'a'] = true;
    std::vector<int> index(26, -1);
    int next = 0;
    for (int l = 0; l < 26; l++)
        if (used[l]) index[l] = next++;
    if (next > generators) throw std::invalid_argument("more letters than generators");

    IntMatrix m(generators, std::max<int>(1, (int)relators.size()));
    for (int j = 0; j < (int)relators.size(); j++) {
        std::string w = relators[j];
        for (char& ch : w) {
            if (ch >= 'a' && ch <= 'z') ch = (char)('a' + index[ch - 'a']);
            else if (ch >= 'A' && ch <= 'Z') ch = (char)('A' + index[ch - 'A']);
        }
        auto ex = exponent_vector(w, generators);
        for (int i = 0; i < generators; i++) m.at(i, j) = ex[i];
    }
    return cokernel(m);
}

}  // namespace polyrank
