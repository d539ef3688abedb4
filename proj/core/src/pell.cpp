#include "realocus/pell.hpp"

namespace realocus {

namespace {

void check_nonsquare(const Int& D)
{
    if (D <= 0 || is_square(D))
        throw input_error("need a positive nonsquare, got " + str(D));
}

/* First convergent of sqrt D with p^2 - D q^2 = +-1. */
PellSolution first_unit_convergent(const Int& D)
{
    Int a0 = isqrt(D);
    Int m = 0, d = 1, a = a0;
    Int p0 = 1, p1 = a0, q0 = 0, q1 = 1;
    for (;;) {
        Int n = p1 * p1 - D * q1 * q1;
        if (n == 1 || n == -1)
            return {p1, q1, n == 1 ? 1 : -1};
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        p1 = p2;
        q0 = q1;
        q1 = q2;
    }
}

} // namespace

PellSolution pell_fundamental(const Int& D)
{
    check_nonsquare(D);
    PellSolution s = first_unit_convergent(D);
    if (s.kind == 1)
        return s;
    /* (u + v sqrt D)^2 */
    return {s.x * s.x + D * s.y * s.y, 2 * s.x * s.y, 1};
}

std::optional<PellSolution> negative_pell(const Int& D)
{
    check_nonsquare(D);
    PellSolution s = first_unit_convergent(D);
    if (s.kind == -1)
        return s;
    return std::nullopt;
}

bool legendre_criterion(long p)
{
    if (!is_prime(p))
        throw input_error("legendre_criterion needs a prime");
    return p == 2 || p % 4 == 1;
}

FundamentalUnit fundamental_unit(const Int& D)
{
    check_nonsquare(D);
    Int r = mod(D, 4);
    if (r != 0 && r != 1)
        throw input_error("not a discriminant: " + str(D));
    Int s = isqrt(D);
    Int P0 = s;
    if (mod(P0 - D, 2) != 0)
        --P0;
    if (P0 * P0 == D) // unreachable for nonsquare D, kept for clarity
        P0 -= 2;
    Int Q0 = 2;
    Int P = P0, Q = Q0;
    Int qa = 1, qb = 0; // q_{-2}, q_{-1}
    long len = 0;
    for (;;) {
        Int a = floor_div(P + s, Q);
        Int qn = a * qb + qa;
        qa = qb;
        qb = qn;
        ++len;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (P == P0 && Q == Q0)
            break;
    }
    /* eps = q_{l-1} alpha_0 + q_{l-2}, alpha_0 = (P0 + sqrt D)/2 */
    QuadNum eps(frac(qb * P0, 2) + Rat(qa), frac(qb, 2), D);
    int norm = len % 2 == 0 ? 1 : -1;
    if (eps.norm() != norm)
        throw invariant_error("fundamental_unit: bad norm for D=" + str(D));
    return {eps, norm};
}

IntMatrix automorph(const Form& q)
{
    PellSolution s = pell_fundamental(disc(q));
    return {s.x - q.b * s.y, -2 * q.c * s.y, 2 * q.a * s.y, s.x + q.b * s.y};
}

QuadMatrix half_automorph(const Form& q, const QuadNum& eta)
{
    Int D = disc(q);
    const Rat &x = eta.x, &y = eta.y;
    auto e = [&](const Rat& v) { return QuadNum(0, v / Rat(D), D); };
    return {e(Rat(D) * y - Rat(q.b) * x), e(-2 * Rat(q.c) * x),
            e(2 * Rat(q.a) * x), e(Rat(D) * y + Rat(q.b) * x)};
}

QuadMatrix automorph_sqrt(const Form& q)
{
    Int D = disc(q);
    FundamentalUnit fu = fundamental_unit(D);
    if (fu.norm != -1)
        throw input_error("automorph_sqrt: unit of norm +1 for D=" + str(D));
    PellSolution s = pell_fundamental(D);
    QuadNum lambda(s.x, s.y, D);
    QuadNum step = fu.eps * fu.eps;
    QuadNum eta = fu.eps;
    for (int i = 0; eta * eta != lambda; ++i) {
        if (i > 8)
            throw invariant_error("automorph_sqrt: no odd power of eps squares to lambda");
        eta = eta * step;
    }
    return half_automorph(q, eta);
}

IntMatrix primitive_automorph(const Form& q)
{
    FundamentalUnit fu = fundamental_unit(disc(q));
    QuadNum l = fu.norm == -1 ? fu.eps * fu.eps : fu.eps;
    Rat a = l.x - Rat(q.b) * l.y, b = -2 * Rat(q.c) * l.y;
    Rat c = 2 * Rat(q.a) * l.y, d = l.x + Rat(q.b) * l.y;
    for (const Rat* v : {&a, &b, &c, &d})
        if (v->get_den() != 1)
            throw invariant_error("primitive_automorph: non-integral entry");
    return {a.get_num(), b.get_num(), c.get_num(), d.get_num()};
}

QuadMatrix primitive_automorph_sqrt(const Form& q)
{
    FundamentalUnit fu = fundamental_unit(disc(q));
    if (fu.norm != -1)
        throw input_error("primitive_automorph_sqrt: unit of norm +1");
    return half_automorph(q, fu.eps);
}

std::pair<IntMatrix, unsigned long> level_automorph(long N, const Form& q)
{
    IntMatrix M = automorph(q);
    IntMatrix Mr{mod(M.a, N), mod(M.b, N), mod(M.c, N), mod(M.d, N)};
    IntMatrix P = Mr;
    for (unsigned long n = 1;; ++n) {
        if (mod(P.b, N) == 0)
            return {power(M, n), n};
        P = P * Mr;
        P = {mod(P.a, N), mod(P.b, N), mod(P.c, N), mod(P.d, N)};
        if (n > 8ul * N * N * N)
            throw invariant_error("level_automorph: runaway search");
    }
}

RatMatrix projective(const QuadMatrix& m)
{
    bool all_rational = true, all_surd = true;
    for (const QuadNum* e : {&m.a, &m.b, &m.c, &m.d}) {
        if (e->y != 0)
            all_rational = false;
        if (e->x != 0)
            all_surd = false;
    }
    RatMatrix r;
    if (all_rational)
        r = {m.a.x, m.b.x, m.c.x, m.d.x};
    else if (all_surd)
        r = {m.a.y, m.b.y, m.c.y, m.d.y};
    else
        throw input_error("projective: mixed entries");
    Rat det = r.a * r.d - r.b * r.c;
    if (det <= 0)
        throw input_error("projective: orientation reversing");
    return r;
}

HPoint moebius(const RatMatrix& m, const HPoint& z)
{
    return moebius(m.a, m.b, m.c, m.d, z);
}

} // namespace realocus
