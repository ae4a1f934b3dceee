#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <string_view>

namespace polyreal {

using Rational = mpq_class;

// Element of Q(sqrt5): value a + b*sqrt(5). mpq_class keeps both components
// reduced, so equal values always have equal (a, b) pairs.
struct QSqrt5 {
    Rational a, b;

    QSqrt5() : a(0), b(0) {}
    QSqrt5(long v) : a(v), b(0) {}
    QSqrt5(Rational av) : a(std::move(av)), b(0) {}
    QSqrt5(Rational av, Rational bv) : a(std::move(av)), b(std::move(bv)) {}

    bool is_zero() const { return a == 0 && b == 0; }
};

QSqrt5 qadd(const QSqrt5& x, const QSqrt5& y);
QSqrt5 qsub(const QSqrt5& x, const QSqrt5& y);
QSqrt5 qmul(const QSqrt5& x, const QSqrt5& y);
QSqrt5 qneg(const QSqrt5& x);
QSqrt5 qinv(const QSqrt5& x);  // throws std::domain_error on zero
QSqrt5 qdiv(const QSqrt5& x, const QSqrt5& y);

// Sign of the real value (-1, 0, +1), decided exactly.
int qsign(const QSqrt5& x);

inline bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a == y.a && x.b == y.b; }
inline bool operator!=(const QSqrt5& x, const QSqrt5& y) { return !(x == y); }
// Value order on the real line.
inline bool operator<(const QSqrt5& x, const QSqrt5& y) { return qsign(qsub(x, y)) < 0; }
inline bool operator<=(const QSqrt5& x, const QSqrt5& y) { return qsign(qsub(x, y)) <= 0; }
inline bool operator>(const QSqrt5& x, const QSqrt5& y) { return qsign(qsub(x, y)) > 0; }
inline bool operator>=(const QSqrt5& x, const QSqrt5& y) { return qsign(qsub(x, y)) >= 0; }

// Structural order on (a, b); cheaper than value order, used for container keys.
int lex_cmp(const QSqrt5& x, const QSqrt5& y);

QSqrt5 golden_tau();    // (1 + sqrt5)/2
QSqrt5 golden_sigma();  // (1 - sqrt5)/2

// Correctly rounded double value of a + b*sqrt5 (MPFR underneath).
double to_float(const QSqrt5& x);

// Exact string form "p/q+r/s*sqrt5" with integer shortcuts ("3/2-1/2*sqrt5",
// "2", "sqrt5", "-1/2*sqrt5"). parse accepts everything format emits.
std::string format_qsqrt5(const QSqrt5& x);
QSqrt5 parse_qsqrt5(std::string_view text);  // throws std::invalid_argument

struct Vec3 {
    QSqrt5 x, y, z;
};

inline bool operator==(const Vec3& u, const Vec3& v) { return u.x == v.x && u.y == v.y && u.z == v.z; }
inline bool operator!=(const Vec3& u, const Vec3& v) { return !(u == v); }

Vec3 vadd(const Vec3& u, const Vec3& v);
Vec3 vsub(const Vec3& u, const Vec3& v);
Vec3 vneg(const Vec3& u);
Vec3 vscale(const QSqrt5& c, const Vec3& u);
QSqrt5 vdot(const Vec3& u, const Vec3& v);
Vec3 vcross(const Vec3& u, const Vec3& v);
bool vec_is_zero(const Vec3& u);
int vec_lex_cmp(const Vec3& u, const Vec3& v);

struct Vec3Less {
    bool operator()(const Vec3& u, const Vec3& v) const { return vec_lex_cmp(u, v) < 0; }
};

// Row-major 3x3 matrix over Q(sqrt5).
struct Mat3 {
    std::array<QSqrt5, 9> m;

    QSqrt5& at(int i, int j) { return m[i * 3 + j]; }
    const QSqrt5& at(int i, int j) const { return m[i * 3 + j]; }
};

bool operator==(const Mat3& p, const Mat3& q);
inline bool operator!=(const Mat3& p, const Mat3& q) { return !(p == q); }

Mat3 mat_identity();
Mat3 mat_diag(const QSqrt5& d0, const QSqrt5& d1, const QSqrt5& d2);
Mat3 mat_mul(const Mat3& p, const Mat3& q);
Vec3 mat_apply(const Mat3& p, const Vec3& v);
Mat3 mat_transpose(const Mat3& p);
QSqrt5 mat_trace(const Mat3& p);
QSqrt5 mat_det(const Mat3& p);
bool is_orthogonal(const Mat3& p);
int mat_lex_cmp(const Mat3& p, const Mat3& q);

struct Mat3Less {
    bool operator()(const Mat3& p, const Mat3& q) const { return mat_lex_cmp(p, q) < 0; }
};

}  // namespace polyreal
