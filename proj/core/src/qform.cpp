#include "realocus/qform.hpp"

#include <algorithm>
#include <cmath>

namespace realocus {

Int disc(const Form& q) { return q.b * q.b - 4 * q.a * q.c; }

Int content(const Form& q) { return gcd3(q.a, q.b, q.c); }

Form primitive(const Form& q)
{
    Int g = content(q);
    if (g == 0)
        throw input_error("zero form");
    return {q.a / g, q.b / g, q.c / g};
}

Form negate(const Form& q) { return {-q.a, -q.b, -q.c}; }

Int inner(const Form& p, const Form& q)
{
    return p.b * q.b - 2 * (p.a * q.c + q.a * p.c);
}

std::string str(const Form& q)
{
    return "[" + str(q.a) + ", " + str(q.b) + ", " + str(q.c) + "]";
}

Form act_unscaled(const IntMatrix& m, const Form& q)
{
    const Int &a = m.a, &b = m.b, &c = m.c, &d = m.d;
    return {q.a * d * d - q.b * d * c + q.c * c * c,
            -2 * q.a * b * d + q.b * (a * d + b * c) - 2 * q.c * a * c,
            q.a * b * b - q.b * a * b + q.c * a * a};
}

Form act(const IntMatrix& m, const Form& q)
{
    Int det = m.det();
    if (det == 1)
        return act_unscaled(m, q);
    if (det == -1)
        return negate(act_unscaled(m, q));
    throw input_error("act needs det +-1, got " + str(det));
}

Form act_quad(const QuadMatrix& m, const Form& q)
{
    Int d = 0;
    for (const QuadNum* e : {&m.a, &m.b, &m.c, &m.d})
        if (e->y != 0)
            d = e->d;
    auto k = [&](const Int& v) { return QuadNum::rational(v, d); };
    /* adj(m) = (md, -mb; -mc, ma) */
    const QuadNum &a = m.a, &b = m.b, &c = m.c, &dd = m.d;
    QuadNum A = k(q.a) * dd * dd - k(q.b) * dd * c + k(q.c) * c * c;
    QuadNum B = QuadNum::rational(-2, d) * k(q.a) * b * dd + k(q.b) * (a * dd + b * c)
                - QuadNum::rational(2, d) * k(q.c) * a * c;
    QuadNum C = k(q.a) * b * b - k(q.b) * a * b + k(q.c) * a * a;
    QuadNum det = m.det();
    A = A / det;
    B = B / det;
    C = C / det;
    for (const QuadNum* e : {&A, &B, &C})
        if (e->y != 0 || e->x.get_den() != 1)
            throw invariant_error("act_quad: non-integral image of " + str(q));
    return {A.x.get_num(), B.x.get_num(), C.x.get_num()};
}

Geodesic geodesic(const Form& q)
{
    Int D = disc(q);
    if (D <= 0)
        throw input_error("geodesic needs positive discriminant: " + str(q));
    if (q.a == 0) {
        if (q.b == 0)
            throw input_error("degenerate form");
        QuadNum fin = QuadNum::rational(frac(-q.c, q.b), D);
        if (q.b > 0)
            return {std::nullopt, fin};
        return {fin, std::nullopt};
    }
    Rat c = frac(-q.b, 2 * q.a), r = frac(1, 2 * q.a);
    return {QuadNum(c, -r, D), QuadNum(c, r, D)};
}

Rat center(const Form& q)
{
    return frac(-q.b, 2 * q.a);
}

Rat radius2(const Form& q)
{
    return frac(disc(q), 4 * q.a * q.a);
}

HPoint tip_point(const Form& q)
{
    if (q.a == 0)
        throw input_error("tip of a cusp-ended geodesic");
    if (disc(q) <= 0)
        throw input_error("tip needs an indefinite form");
    return {center(q), radius2(q)};
}

Form point_form(const HPoint& z)
{
    if (z.im2 <= 0)
        throw input_error("point not in upper half plane");
    Rat b = -2 * z.re, c = z.re * z.re + z.im2;
    Int l = lcm(b.get_den(), c.get_den());
    return primitive({l, Rat(b * l).get_num(), Rat(c * l).get_num()});
}

Form tip(const Form& q) { return point_form(tip_point(q)); }

bool on_geodesic(const Form& q, const HPoint& z)
{
    return Rat(q.a) * (z.re * z.re + z.im2) + Rat(q.b) * z.re + Rat(q.c) == 0;
}

int intersection_number(const Form& p, const Form& q)
{
    Int i = inner(p, q);
    if (i * i >= disc(p) * disc(q))
        return 0;
    return sgn(q.a * p.b - p.a * q.b);
}

bool crosses_sigma_bar(const Form& q)
{
    Int s = q.a + q.c;
    if (s < 0)
        s = -s;
    return q.b > 0 && 2 * s <= q.b;
}

bool through_rho(const Form& q, int a)
{
    return 2 * (q.a + q.c) + a * q.b == 0;
}

namespace {

struct Span {
    QuadNum lo, hi;
    bool lo_in, hi_in;
};

/* x-range of gamma_q inside |x| <= 1/2, with flags for closed ends. */
std::optional<Span> strip_span(const Form& q)
{
    Int D = disc(q);
    Rat c = center(q);
    Rat r = frac(1, 2 * abs(q.a));
    QuadNum left(c, -r, D), right(c, r, D);
    QuadNum mh = QuadNum::rational(Rat(-1, 2), D), ph = QuadNum::rational(Rat(1, 2), D);
    Span s;
    if (mh > left) {
        s.lo = mh;
        s.lo_in = true;
    } else {
        s.lo = left;
        s.lo_in = false;
    }
    if (ph < right) {
        s.hi = ph;
        s.hi_in = true;
    } else {
        s.hi = right;
        s.hi_in = false;
    }
    if (s.lo > s.hi)
        return std::nullopt;
    return s;
}

/* |tau|^2 along gamma_q at abscissa x: R^2 - c^2 + 2cx */
QuadNum modulus2(const Form& q, const QuadNum& x)
{
    Rat c = center(q);
    return QuadNum::rational(radius2(q) - c * c, x.d) + QuadNum::rational(2 * c, x.d) * x;
}

} // namespace

bool meets_f_interior(const Form& q)
{
    auto s = strip_span(q);
    if (!s || s->lo == s->hi)
        return false;
    QuadNum one = QuadNum::rational(1, s->lo.d);
    return modulus2(q, s->lo) > one || modulus2(q, s->hi) > one;
}

bool meets_f_closed(const Form& q)
{
    auto s = strip_span(q);
    if (!s)
        return false;
    QuadNum one = QuadNum::rational(1, s->lo.d);
    if (s->lo == s->hi)
        return s->lo_in && s->hi_in && modulus2(q, s->lo) >= one;
    auto ok = [&](const QuadNum& x, bool in) {
        QuadNum m = modulus2(q, x);
        return in ? m >= one : m > one;
    };
    return ok(s->lo, s->lo_in) || ok(s->hi, s->hi_in);
}

bool is_reduced_indefinite(const Form& q)
{
    if (q.b <= 0)
        return false;
    Int s = q.a + q.c;
    int a = q.a >= 0 ? 1 : -1;
    return 2 * abs(s) < q.b || 2 * s == -a * q.b;
}

bool is_nearly_reduced(const Form& q)
{
    return disc(q) > 0 && 3 * q.a * q.a <= disc(q);
}

Interval j_interval(const Form& q)
{
    if (q.a == 0 || !is_nearly_reduced(q))
        throw input_error("j_interval needs a nearly reduced form: " + str(q));
    Int D = disc(q), e = D - 3 * q.a * q.a;
    Rat h(1, 2), base = frac(q.b, 2 * q.a), r = frac(1, 2 * q.a);
    auto t = [&](int s) { return QuadNum(base + s * h, r, e); };
    auto tp = [&](int s) { return QuadNum(base + s * h, -r, e); };
    QuadNum x, y;
    if (D > 4 * q.a * q.a) {
        x = tp(-1);
        y = tp(1);
    } else {
        int a = q.a > 0 ? 1 : -1;
        x = t(-a);
        y = tp(-a);
    }
    if (x > y)
        std::swap(x, y);
    return {x, y};
}

Form translate(const Form& q, const Int& t)
{
    return {q.a, q.b - 2 * q.a * t, q.a * t * t - q.b * t + q.c};
}

std::pair<Form, Int> normalize(const Form& q)
{
    Interval J = j_interval(q);
    Int lo = floor_rat(J.lo.x) - 2, hi = floor_rat(J.hi.x) + 2;
    /* J has width at most one, the rational parts bound it loosely */
    Int lo2 = Int(std::floor(J.lo.to_double())) - 2, hi2 = Int(std::floor(J.hi.to_double())) + 2;
    lo = std::min(lo, lo2);
    hi = std::max(hi, hi2);
    std::optional<Int> found;
    for (Int t = lo; t <= hi; ++t) {
        if (is_reduced_indefinite(translate(q, t))) {
            if (found)
                throw input_error("normalize: two reduced translates of " + str(q));
            found = t;
        }
    }
    if (!found)
        throw input_error("normalize: no reduced translate of " + str(q));
    return {translate(q, *found), *found};
}

std::pair<Form, IntMatrix> reduce_definite(const Form& p)
{
    if (disc(p) >= 0 || p.a <= 0)
        throw input_error("reduce_definite needs a positive definite form: " + str(p));
    Form f = p;
    IntMatrix m = IntMatrix::identity();
    const IntMatrix S = IntMatrix::S();
    for (;;) {
        /* b into (-a, a] */
        Int t = -floor_div(f.a - f.b, 2 * f.a);
        if (t != 0) {
            f = translate(f, t);
            m = IntMatrix::T(t) * m;
        }
        if (f.a > f.c) {
            f = act(S, f);
            m = S * m;
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            f = act(S, f);
            m = S * m;
        }
        break;
    }
    return {f, m};
}

} // namespace realocus
