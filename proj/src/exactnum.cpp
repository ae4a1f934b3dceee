#include "polyreal/exactnum.hpp"

#include <mpfr.h>

#include <cctype>
#include <stdexcept>

namespace polyreal {

QSqrt5 qadd(const QSqrt5& x, const QSqrt5& y) { return {x.a + y.a, x.b + y.b}; }
QSqrt5 qsub(const QSqrt5& x, const QSqrt5& y) { return {x.a - y.a, x.b - y.b}; }

QSqrt5 qmul(const QSqrt5& x, const QSqrt5& y) {
    return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
}

QSqrt5 qneg(const QSqrt5& x) { return {-x.a, -x.b}; }

QSqrt5 qinv(const QSqrt5& x) {
    // 1/(a + b*sqrt5) = (a - b*sqrt5)/(a^2 - 5 b^2); the norm vanishes only at 0
    // since 5 is not a rational square.
    Rational d = x.a * x.a - 5 * x.b * x.b;
    if (d == 0) throw std::domain_error("QSqrt5: inversion of zero");
    return {x.a / d, -x.b / d};
}

QSqrt5 qdiv(const QSqrt5& x, const QSqrt5& y) { return qmul(x, qinv(y)); }

int qsign(const QSqrt5& x) {
    int sa = sgn(x.a), sb = sgn(x.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare |a| with |b|*sqrt5 via squares
    int c = cmp(x.a * x.a, 5 * x.b * x.b);
    return c > 0 ? sa : sb;  // c == 0 impossible for nonzero components
}

int lex_cmp(const QSqrt5& x, const QSqrt5& y) {
    int c = cmp(x.a, y.a);
    if (c != 0) return c;
    return cmp(x.b, y.b);
}

QSqrt5 golden_tau() { return {Rational(1, 2), Rational(1, 2)}; }
QSqrt5 golden_sigma() { return {Rational(1, 2), Rational(-1, 2)}; }

double to_float(const QSqrt5& x) {
    if (x.b == 0) {
        mpfr_t r;
        mpfr_init2(r, 53);
        mpfr_set_q(r, x.a.get_mpq_t(), MPFR_RNDN);
        double out = mpfr_get_d(r, MPFR_RNDN);
        mpfr_clear(r);
        return out;
    }
    // a + b*sqrt5 is irrational here, so the can_round loop terminates.
    for (mpfr_prec_t prec = 128; prec <= 1 << 16; prec *= 2) {
        mpfr_t r;
        mpfr_init2(r, prec);
        mpfr_sqrt_ui(r, 5, MPFR_RNDN);
        mpfr_mul_q(r, r, x.b.get_mpq_t(), MPFR_RNDN);
        mpfr_add_q(r, r, x.a.get_mpq_t(), MPFR_RNDN);
        if (mpfr_can_round(r, prec - 3, MPFR_RNDN, MPFR_RNDN, 53)) {
            double out = mpfr_get_d(r, MPFR_RNDN);
            mpfr_clear(r);
            return out;
        }
        mpfr_clear(r);
    }
    throw std::runtime_error("QSqrt5: to_float failed to round");
}

namespace {

std::string format_rational(const Rational& r) { return r.get_str(); }

// rational := ['+'|'-'] digits ['/' digits]
Rational parse_rational(std::string_view& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t start_digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start_digits) throw std::invalid_argument("QSqrt5 parse: expected digits");
    if (i < s.size() && s[i] == '/') {
        ++i;
        std::size_t den_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_start) throw std::invalid_argument("QSqrt5 parse: expected denominator");
    }
    Rational r;
    if (r.set_str(std::string(s.substr(0, i)), 10) != 0)
        throw std::invalid_argument("QSqrt5 parse: bad rational");
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("QSqrt5 parse: zero denominator");
    s.remove_prefix(i);
    return r;
}

void skip_space(std::string_view& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
}

bool eat(std::string_view& s, std::string_view word) {
    if (s.substr(0, word.size()) == word) {
        s.remove_prefix(word.size());
        return true;
    }
    return false;
}

// term := rational ['*' 'sqrt5'] | ['-'|'+'] 'sqrt5'
// Returns the term value; sets is_sqrt5 when the term carries the radical.
QSqrt5 parse_term(std::string_view& s) {
    skip_space(s);
    int sign = 1;
    std::string_view probe = s;
    if (!probe.empty() && (probe.front() == '+' || probe.front() == '-')) {
        if (probe.front() == '-') sign = -1;
        probe.remove_prefix(1);
        skip_space(probe);
    }
    if (eat(probe, "sqrt5")) {
        s = probe;
        return {Rational(0), Rational(sign)};
    }
    Rational r = parse_rational(s);
    skip_space(s);
    std::string_view after = s;
    if (eat(after, "*")) {
        skip_space(after);
        if (!eat(after, "sqrt5")) throw std::invalid_argument("QSqrt5 parse: expected sqrt5 after *");
        s = after;
        return {Rational(0), r};
    }
    return {r, Rational(0)};
}

}  // namespace

std::string format_qsqrt5(const QSqrt5& x) {
    if (x.b == 0) return format_rational(x.a);
    std::string radical;
    if (x.b == 1)
        radical = "sqrt5";
    else if (x.b == -1)
        radical = "-sqrt5";
    else
        radical = format_rational(x.b) + "*sqrt5";
    if (x.a == 0) return radical;
    if (sgn(x.b) > 0) return format_rational(x.a) + "+" + radical;
    return format_rational(x.a) + radical;  // radical already carries '-'
}

QSqrt5 parse_qsqrt5(std::string_view text) {
    std::string_view s = text;
    QSqrt5 first = parse_term(s);
    skip_space(s);
    QSqrt5 result = first;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        QSqrt5 second = parse_term(s);
        if (first.b != 0 || second.b == 0)
            throw std::invalid_argument("QSqrt5 parse: expected rational + radical form");
        result = qadd(first, second);
        skip_space(s);
    }
    if (!s.empty()) throw std::invalid_argument("QSqrt5 parse: trailing characters");
    return result;
}

Vec3 vadd(const Vec3& u, const Vec3& v) { return {qadd(u.x, v.x), qadd(u.y, v.y), qadd(u.z, v.z)}; }
Vec3 vsub(const Vec3& u, const Vec3& v) { return {qsub(u.x, v.x), qsub(u.y, v.y), qsub(u.z, v.z)}; }
Vec3 vneg(const Vec3& u) { return {qneg(u.x), qneg(u.y), qneg(u.z)}; }
Vec3 vscale(const QSqrt5& c, const Vec3& u) { return {qmul(c, u.x), qmul(c, u.y), qmul(c, u.z)}; }

QSqrt5 vdot(const Vec3& u, const Vec3& v) {
    return qadd(qadd(qmul(u.x, v.x), qmul(u.y, v.y)), qmul(u.z, v.z));
}

Vec3 vcross(const Vec3& u, const Vec3& v) {
    return {qsub(qmul(u.y, v.z), qmul(u.z, v.y)),
            qsub(qmul(u.z, v.x), qmul(u.x, v.z)),
            qsub(qmul(u.x, v.y), qmul(u.y, v.x))};
}

bool vec_is_zero(const Vec3& u) { return u.x.is_zero() && u.y.is_zero() && u.z.is_zero(); }

int vec_lex_cmp(const Vec3& u, const Vec3& v) {
    int c = lex_cmp(u.x, v.x);
    if (c != 0) return c;
    c = lex_cmp(u.y, v.y);
    if (c != 0) return c;
    return lex_cmp(u.z, v.z);
}

bool operator==(const Mat3& p, const Mat3& q) {
    for (int i = 0; i < 9; ++i)
        if (p.m[i] != q.m[i]) return false;
    return true;
}

Mat3 mat_identity() { return mat_diag(QSqrt5(1), QSqrt5(1), QSqrt5(1)); }

Mat3 mat_diag(const QSqrt5& d0, const QSqrt5& d1, const QSqrt5& d2) {
    Mat3 r;
    r.m.fill(QSqrt5(0));
    r.at(0, 0) = d0;
    r.at(1, 1) = d1;
    r.at(2, 2) = d2;
    return r;
}

Mat3 mat_mul(const Mat3& p, const Mat3& q) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            QSqrt5 s = qmul(p.at(i, 0), q.at(0, j));
            s = qadd(s, qmul(p.at(i, 1), q.at(1, j)));
            s = qadd(s, qmul(p.at(i, 2), q.at(2, j)));
            r.at(i, j) = s;
        }
    return r;
}

Vec3 mat_apply(const Mat3& p, const Vec3& v) {
    auto row = [&](int i) {
        return qadd(qadd(qmul(p.at(i, 0), v.x), qmul(p.at(i, 1), v.y)), qmul(p.at(i, 2), v.z));
    };
    return {row(0), row(1), row(2)};
}

Mat3 mat_transpose(const Mat3& p) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = p.at(j, i);
    return r;
}

QSqrt5 mat_trace(const Mat3& p) { return qadd(qadd(p.at(0, 0), p.at(1, 1)), p.at(2, 2)); }

QSqrt5 mat_det(const Mat3& p) {
    QSqrt5 d = qmul(p.at(0, 0), qsub(qmul(p.at(1, 1), p.at(2, 2)), qmul(p.at(1, 2), p.at(2, 1))));
    d = qsub(d, qmul(p.at(0, 1), qsub(qmul(p.at(1, 0), p.at(2, 2)), qmul(p.at(1, 2), p.at(2, 0)))));
    d = qadd(d, qmul(p.at(0, 2), qsub(qmul(p.at(1, 0), p.at(2, 1)), qmul(p.at(1, 1), p.at(2, 0)))));
    return d;
}

bool is_orthogonal(const Mat3& p) { return mat_mul(mat_transpose(p), p) == mat_identity(); }

int mat_lex_cmp(const Mat3& p, const Mat3& q) {
    for (int i = 0; i < 9; ++i) {
        int c = lex_cmp(p.m[i], q.m[i]);
        if (c != 0) return c;
    }
    return 0;
}

}  // namespace polyreal
