#pragma once

#include <array>
#include <string>

#include "voa/errors.hpp"
#include "voa/rational.hpp"

namespace voa {

// Element of Q(i, sqrt2, sqrt3), stored as 8 rational coordinates on the basis
//   {1, √2, √3, √6} x {1, i}
// in the fixed order 1, √2, √3, √6, i, √2·i, √3·i, √6·i.  The basis is
// Q-linearly independent, so an element is zero iff all coordinates are zero.
class Scalar {
  public:
    static constexpr int kDim = 8;

    Scalar() = default;
    Scalar(long long n) { c_[0] = n; }
    Scalar(const Rational& r) { c_[0] = r; }

    static Scalar basis(int idx) {
        Scalar s;
        s.c_[idx] = 1;
        return s;
    }
    static Scalar sqrt2() { return basis(1); }
    static Scalar sqrt3() { return basis(2); }
    static Scalar sqrt6() { return basis(3); }
    static Scalar i() { return basis(4); }

    // e^{2 pi i t/12}; every torus phase in scope lands in the 12th roots.
    static Scalar root_of_unity_12(int t) {
        t = ((t % 12) + 12) % 12;
        static const int re_num[12] = {2, 0, 1, 0, -1, 0, -2, 0, -1, 0, 1, 0};
        static const int re_s3[12] = {0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1};
        static const int im_num[12] = {0, 1, 0, 2, 0, 1, 0, -1, 0, -2, 0, -1};
        static const int im_s3[12] = {0, 0, 1, 0, 1, 0, 0, 0, -1, 0, -1, 0};
        Scalar s;
        s.c_[0] = Rational(re_num[t], 2);
        s.c_[2] = Rational(re_s3[t], 2);
        s.c_[4] = Rational(im_num[t], 2);
        s.c_[6] = Rational(im_s3[t], 2);
        return s;
    }

    const Rational& coord(int idx) const { return c_[idx]; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (int j = 1; j < kDim; ++j)
            if (c_[j] != 0) return false;
        return true;
    }
    const Rational& rational_part() const { return c_[0]; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar operator-() const {
        Scalar r;
        for (int j = 0; j < kDim; ++j) r.c_[j] = -c_[j];
        return r;
    }
    Scalar& operator+=(const Scalar& o) {
        for (int j = 0; j < kDim; ++j)
            if (o.c_[j] != 0) c_[j] += o.c_[j];
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        for (int j = 0; j < kDim; ++j)
            if (o.c_[j] != 0) c_[j] -= o.c_[j];
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (int p = 0; p < kDim; ++p) {
            if (a.c_[p] == 0) continue;
            for (int q = 0; q < kDim; ++q) {
                if (b.c_[q] == 0) continue;
                const Cell& cell = mul_table(p, q);
                r.c_[cell.idx] += a.c_[p] * b.c_[q] * cell.factor;
            }
        }
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Fast path for plain rational multipliers.
    Scalar& scale(const Rational& r) {
        for (int j = 0; j < kDim; ++j)
            if (c_[j] != 0) c_[j] *= r;
        return *this;
    }
    friend Scalar operator*(const Rational& r, Scalar s) { return s.scale(r); }

    // i -> -i involution.
    Scalar conjugate_i() const {
        Scalar r = *this;
        for (int j = 4; j < kDim; ++j) r.c_[j] = -r.c_[j];
        return r;
    }

    // Exact inverse, computed by solving the 8x8 linear system given by the
    // left-multiplication matrix of *this over Q.
    Scalar inverse() const {
        if (is_zero()) throw DivisionByZeroError();
        // aug[r][0..7] = matrix of x -> (*this) * x in the fixed basis, aug[r][8] = e_0.
        std::array<std::array<Rational, kDim + 1>, kDim> aug{};
        for (int col = 0; col < kDim; ++col) {
            Scalar prod = *this * basis(col);
            for (int row = 0; row < kDim; ++row) aug[row][col] = prod.c_[row];
        }
        aug[0][kDim] = 1;
        for (int col = 0; col < kDim; ++col) {
            int piv = -1;
            for (int row = col; row < kDim; ++row)
                if (aug[row][col] != 0) {
                    piv = row;
                    break;
                }
            if (piv < 0) throw DivisionByZeroError();  // cannot happen in a field
            std::swap(aug[col], aug[piv]);
            Rational inv_p = 1 / aug[col][col];
            for (int j = col; j <= kDim; ++j) aug[col][j] *= inv_p;
            for (int row = 0; row < kDim; ++row) {
                if (row == col || aug[row][col] == 0) continue;
                Rational f = aug[row][col];
                for (int j = col; j <= kDim; ++j) aug[row][j] -= f * aug[col][j];
            }
        }
        Scalar r;
        for (int row = 0; row < kDim; ++row) r.c_[row] = aug[row][kDim];
        return r;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    // Canonical text form "a + b√2 + c√3 + d√6 + (e + f√2 + g√3 + h√6)i" with
    // zero terms omitted; rationals print as "p" or "p/q", and a fractional
    // coefficient in front of a radical is parenthesized.
    std::string str() const {
        std::string re = part_str(0);
        std::string im = part_str(4);
        if (re.empty() && im.empty()) return "0";
        std::string out = re;
        if (!im.empty()) {
            bool wrap = im_term_count() > 1;
            std::string imt = wrap ? "(" + im + ")i" : im + "i";
            if (out.empty())
                out = imt;
            else if (imt[0] == '-')
                out += " - " + imt.substr(1);
            else
                out += " + " + imt;
        }
        return out;
    }

  private:
    struct Cell {
        int idx;
        int factor;
    };

    // Structure table of the real part {1,√2,√3,√6}: entry (a,b) -> (index, factor).
    static const Cell& mul_table(int p, int q) {
        static const std::array<std::array<Cell, kDim>, kDim> table = [] {
            std::array<std::array<Cell, kDim>, kDim> t{};
            // real 4x4 block: products of 1, √2, √3, √6
            const Cell real4[4][4] = {
                {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                {{1, 1}, {0, 2}, {3, 1}, {2, 2}},
                {{2, 1}, {3, 1}, {0, 3}, {1, 3}},
                {{3, 1}, {2, 2}, {1, 3}, {0, 6}},
            };
            for (int a = 0; a < kDim; ++a) {
                for (int b = 0; b < kDim; ++b) {
                    int ra = a & 3, rb = b & 3;
                    bool ia = a >= 4, ib = b >= 4;
                    Cell cell = real4[ra][rb];
                    if (ia && ib)
                        cell.factor = -cell.factor;  // i*i = -1
                    else if (ia || ib)
                        cell.idx += 4;
                    t[a][b] = cell;
                }
            }
            return t;
        }();
        return table[p][q];
    }

    int im_term_count() const {
        int n = 0;
        for (int j = 4; j < kDim; ++j)
            if (c_[j] != 0) ++n;
        return n;
    }

    std::string part_str(int offset) const {
        static const char* sym[4] = {"", "√2", "√3", "√6"};
        std::string out;
        for (int j = 0; j < 4; ++j) {
            const Rational& r = c_[offset + j];
            if (r == 0) continue;
            std::string term;
            if (j == 0) {
                term = rational_str(r);
            } else if (r == 1) {
                term = sym[j];
            } else if (r == -1) {
                term = std::string("-") + sym[j];
            } else if (denominator(r) == 1) {
                term = rational_str(r) + sym[j];
            } else {
                term = "(" + rational_str(r) + ")" + sym[j];
            }
            if (out.empty())
                out = term;
            else if (term[0] == '-')
                out += " - " + term.substr(1);
            else
                out += " + " + term;
        }
        return out;
    }

    std::array<Rational, kDim> c_{};
};

inline bool is_rational(const Scalar& s) { return s.is_rational(); }
inline Scalar conjugate_i(const Scalar& s) { return s.conjugate_i(); }

}  // namespace voa
