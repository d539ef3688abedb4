#include "realocus/periods.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace realocus {

namespace {

constexpr long double pi_l = std::numbers::pi_v<long double>;

using lcplx = std::complex<long double>;

/* Roots of 4x^3 + b2 x^2 + 2 b4 x + b6: real roots descending, or e1 real and e2 complex. */
struct Roots {
    bool three_real;
    long double e1, e2r, e3;
    lcplx e2;
};

Roots cubic_roots(long double b2, long double b4, long double b6)
{
    long double a = b2 / 4, b = b4 / 2, c = b6 / 4;
    long double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + c;
    long double D = q * q / 4 + p * p * p / 27;
    auto f = [&](long double x) { return ((x + a) * x + b) * x + c; };
    auto df = [&](long double x) { return (3 * x + 2 * a) * x + b; };
    auto polish = [&](long double x) {
        for (int i = 0; i < 4; ++i) {
            long double d = df(x);
            if (d == 0)
                break;
            x -= f(x) / d;
        }
        return x;
    };
    Roots r{};
    if (D < 0) {
        long double m = 2 * std::sqrt(-p / 3);
        long double th = std::acos(std::clamp<long double>(3 * q / (p * m), -1, 1)) / 3;
        long double t[3];
        for (int k = 0; k < 3; ++k)
            t[k] = polish(m * std::cos(th - 2 * pi_l * k / 3) - a / 3);
        std::sort(t, t + 3, std::greater<>());
        r.three_real = true;
        r.e1 = t[0];
        r.e2r = t[1];
        r.e3 = t[2];
        return r;
    }
    long double s = std::sqrt(D);
    long double x1 = polish(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s) - a / 3);
    /* x^2 + (a + x1) x + (b + x1 (a + x1)) */
    long double B = a + x1, C = b + x1 * B;
    long double disc = B * B - 4 * C;
    r.three_real = false;
    r.e1 = x1;
    r.e2 = lcplx(-B / 2, std::sqrt(std::max<long double>(-disc, 0)) / 2);
    return r;
}

long double agm(long double x, long double y)
{
    for (int i = 0; i < 64 && std::fabs(x - y) > 1e-19L * std::fabs(x); ++i) {
        long double m = (x + y) / 2;
        y = std::sqrt(x * y);
        x = m;
    }
    return x;
}

std::vector<long> smallest_prime_factor(std::size_t n)
{
    std::vector<long> spf(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        spf[i] = static_cast<long>(i);
    for (std::size_t i = 2; i * i <= n; ++i)
        if (spf[i] == static_cast<long>(i))
            for (std::size_t j = i * i; j <= n; j += i)
                if (spf[j] == static_cast<long>(j))
                    spf[j] = static_cast<long>(i);
    return spf;
}

long label_conductor(const std::string& label)
{
    std::size_t k = 0;
    while (k < label.size() && std::isdigit(static_cast<unsigned char>(label[k])))
        ++k;
    if (k == 0)
        throw input_error("curve label must start with its conductor: " + label);
    return std::stol(label.substr(0, k));
}

/* The base point of largest height on a path tau -> g tau for g = (a,b;c,d): -d/c + i/|c|. */
lcplx base_point(const IntMatrix& g)
{
    long double c = g.c.get_d(), d = g.d.get_d();
    return lcplx(-d / c, 1 / std::fabs(c));
}

lcplx apply(const IntMatrix& g, lcplx z)
{
    long double a = g.a.get_d(), b = g.b.get_d(), c = g.c.get_d(), d = g.d.get_d();
    return (a * z + b) / (c * z + d);
}

} // namespace

CurveInvariants invariants(const Curve& e)
{
    Int a1 = e.a[0], a2 = e.a[1], a3 = e.a[2], a4 = e.a[3], a6 = e.a[4];
    CurveInvariants v;
    v.b2 = a1 * a1 + 4 * a2;
    v.b4 = 2 * a4 + a1 * a3;
    v.b6 = a3 * a3 + 4 * a6;
    v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 +
             9 * v.b2 * v.b4 * v.b6;
    return v;
}

long prime_conductor(const Curve& e)
{
    CurveInvariants v = invariants(e);
    if (v.disc == 0)
        throw input_error("singular curve " + e.label);
    Int m = abs(v.disc);
    long p = 0;
    for (long q = 2; Int(q) * q <= m; ++q)
        if (m % q == 0) {
            p = q;
            break;
        }
    if (p == 0)
        p = m.get_si();
    while (m % p == 0)
        m /= p;
    if (m != 1)
        throw input_error("curve " + e.label + ": discriminant is not a prime power");
    /* multiplicative reduction at p: p does not divide c4; then the model is minimal */
    if (mod(v.c4, p) == 0)
        throw input_error("curve " + e.label + ": additive reduction at " + std::to_string(p));
    return p;
}

std::vector<Curve> parse_curves(std::istream& in)
{
    std::vector<Curve> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = line.substr(0, line.find('#'));
        std::istringstream ss(line);
        Curve e;
        if (!(ss >> e.label))
            continue;
        for (long& x : e.a)
            if (!(ss >> x))
                throw input_error("curve file line " + std::to_string(lineno) + ": need 5 coefficients");
        std::string extra;
        if (ss >> extra)
            throw input_error("curve file line " + std::to_string(lineno) + ": trailing text");
        e.conductor = label_conductor(e.label);
        long n = prime_conductor(e);
        if (n != e.conductor)
            throw input_error("curve " + e.label + " has conductor " + std::to_string(n));
        out.push_back(e);
    }
    return out;
}

std::vector<Curve> load_curves(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot read curve file " + path);
    return parse_curves(in);
}

const Curve& find_curve(const std::vector<Curve>& curves, const std::string& label)
{
    for (const Curve& e : curves)
        if (e.label == label)
            return e;
    throw input_error("no curve labelled " + label);
}

long ap(const Curve& e, long p)
{
    if (!is_prime(p))
        throw input_error("ap needs a prime");
    auto md = [p](long x) { return ((x % p) + p) % p; };
    long a1 = md(e.a[0]), a2 = md(e.a[1]), a3 = md(e.a[2]), a4 = md(e.a[3]), a6 = md(e.a[4]);
    if (p == 2) {
        long affine = 0;
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y)
                if (md(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) == 0)
                    ++affine;
        return p - affine;
    }
    /* y^2 + (a1 x + a3) y = g(x) has 1 + (disc/p) roots, disc = (a1 x + a3)^2 + 4 g(x) */
    std::vector<int> chi(p, -1);
    chi[0] = 0;
    for (long y = 1; y < p; ++y)
        chi[y * y % p] = 1;
    long s = 0;
    for (long x = 0; x < p; ++x) {
        long h = (a1 * x + a3) % p;
        long g = ((x * x % p * x) % p + a2 * x % p * x % p + a4 * x + a6) % p;
        s += chi[(h * h + 4 * g) % p];
    }
    return -s;
}

std::vector<long> an_table(const Curve& e, std::size_t nmax)
{
    long N = e.conductor;
    std::vector<long> an(nmax + 1, 0);
    if (nmax >= 1)
        an[1] = 1;
    std::vector<long> spf = smallest_prime_factor(nmax);
    std::vector<long> apv(nmax + 1, 0);
    for (std::size_t n = 2; n <= nmax; ++n) {
        long p = spf[n];
        std::size_t m = n;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (static_cast<std::size_t>(p) == n)
            apv[p] = ap(e, p);
        long a = apv[p], ape;
        if (N % p == 0) {
            ape = 1;
            for (int i = 0; i < k; ++i)
                ape *= a;
        } else {
            long x0 = 1, x1 = a;
            for (int i = 1; i < k; ++i) {
                long x2 = a * x1 - p * x0;
                x0 = x1;
                x1 = x2;
            }
            ape = x1;
        }
        an[n] = ape * an[m];
    }
    return an;
}

double real_period(const Curve& e)
{
    CurveInvariants v = invariants(e);
    Roots r = cubic_roots(v.b2.get_d(), v.b4.get_d(), v.b6.get_d());
    if (r.three_real)
        return static_cast<double>(pi_l / agm(std::sqrt(r.e1 - r.e3), std::sqrt(r.e1 - r.e2r)));
    long double A = std::abs(r.e1 - r.e2);
    return static_cast<double>(pi_l / agm(std::sqrt(A), std::sqrt((A + r.e1 - r.e2.real()) / 2)));
}

Newform::Newform(const Curve& e, double tol) : curve_(e), N_(e.conductor), tol_(tol)
{
    ensure_terms(1.0 / N_);
    /* f(-1/(N t)) = eps N t^2 f(t) */
    lcplx t(0, 1.2L / std::sqrt(static_cast<long double>(N_)));
    lcplx w = -1.0L / (static_cast<long double>(N_) * t);
    cplx lhs = value(cplx(w)), rhs = value(cplx(t)) * cplx(static_cast<long double>(N_) * t * t);
    double ratio = (lhs / rhs).real();
    eps_ = ratio > 0 ? 1 : -1;
    if (std::abs(lhs / rhs - cplx(eps_)) > 1e-6)
        throw invariant_error("Fricke eigenvalue of " + e.label + " is not +-1");
}

void Newform::ensure_terms(double im) const
{
    /* |a_n / n| <= 1 after the divisor bound is absorbed in the margin */
    double need = (std::log(1 / tol_) + 6) / (2 * std::numbers::pi * im);
    std::size_t n = static_cast<std::size_t>(std::ceil(need)) + 16;
    if (n > 50'000'000)
        throw input_error("q-expansion would need too many terms");
    if (an_.size() < n + 1)
        an_ = an_table(curve_, n);
}

cplx Newform::value(cplx tau) const
{
    ensure_terms(tau.imag());
    lcplx q = std::exp(lcplx(0, 2 * pi_l) * lcplx(tau));
    lcplx s = 0, qn = 1;
    for (std::size_t n = 1; n < an_.size(); ++n) {
        qn *= q;
        s += static_cast<long double>(an_[n]) * qn;
    }
    return cplx(s);
}

cplx Newform::integral(cplx t0, cplx t1) const
{
    ensure_terms(std::min(t0.imag(), t1.imag()));
    lcplx q0 = std::exp(lcplx(0, 2 * pi_l) * lcplx(t0));
    lcplx q1 = std::exp(lcplx(0, 2 * pi_l) * lcplx(t1));
    lcplx s = 0, p0 = 1, p1 = 1;
    for (std::size_t n = 1; n < an_.size(); ++n) {
        p0 *= q0;
        p1 *= q1;
        if (an_[n] != 0)
            s += static_cast<long double>(an_[n]) / static_cast<long double>(n) * (p1 - p0);
    }
    return cplx(s);
}

cplx Newform::period_of_matrix(const IntMatrix& g) const
{
    if (g.det() != 1 || mod(g.c, N_) != 0)
        throw input_error("period_of_matrix needs an element of Gamma_0(N)");
    if (g.c == 0)
        return 0;
    lcplx t = base_point(g);
    return integral(cplx(t), cplx(apply(g, t)));
}

cplx Newform::integrate_msymbol(const MSymbol& s) const
{
    MSymbol c = msymbol(N_, s.c, s.d);
    if (c.d == 0)
        return 0;
    Int r = mod(c.c, N_);
    if (r == 0)
        return integrate_zero_split(1 / std::sqrt(static_cast<double>(N_)));
    /* {i*oo, r} -> {i*oo, r/N} = {tau, g tau} with g = (r, b; N, d) */
    Int d = mod(inv_mod(r, N_), N_);
    Int b = (r * d - 1) / N_;
    return period_of_matrix(IntMatrix{r, b, Int(N_), d});
}

cplx Newform::integrate_zero_split(double height) const
{
    /* {i*oo, i h} directly, {i h, 0} as eps times {i/(N h), i*oo} */
    const cplx top(0, 1e300);
    cplx upper = integral(top, cplx(0, height));
    cplx lower = integral(top, cplx(0, 1 / (N_ * height)));
    return upper - static_cast<double>(eps_) * lower;
}

IntMatrix to_gamma0(long N, const IntMatrix& m)
{
    if (!in_gamma_upper(m, N))
        throw input_error("to_gamma0 needs an element of Gamma^0(N)");
    return {m.a, m.b / N, m.c * N, m.d};
}

PeriodResult alpha(const Newform& f, const std::vector<MSymbol>& symbols, bool doubled,
                   double rel_tol)
{
    cplx sum = 0;
    for (const MSymbol& s : symbols)
        sum += f.integrate_msymbol(s);
    if (doubled)
        sum /= 2.0;
    PeriodResult r;
    r.omega_e = real_period(f.curve());
    r.omega_eq = sum.real();
    r.imag_residue = std::fabs(sum.imag());
    r.alpha = std::lround(std::fabs(r.omega_eq) / r.omega_e);
    r.residual = std::fabs(std::fabs(r.omega_eq) - r.alpha * r.omega_e);
    if (r.residual >= rel_tol * r.omega_e)
        throw invariant_error("alpha: Omega_EQ / Omega_E = " + std::to_string(r.omega_eq / r.omega_e) +
                              " is not an integer");
    return r;
}

PeriodResult alpha(const Newform& f, const Component& comp, double rel_tol)
{
    if (comp.N != f.level())
        throw input_error("component level differs from the conductor");
    return alpha(f, component_class(comp), comp.doubled, rel_tol);
}

} // namespace realocus
