#include "realocus/coding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace realocus {

namespace {

using FormKey = std::tuple<Int, Int, Int>;
FormKey fkey(const Form& f) { return {f.a, f.b, f.c}; }

int sign1(const Int& x) { return x >= 0 ? 1 : -1; }

Int floor_quad(const QuadNum& x)
{
    Int f = Int(std::floor(x.to_double()));
    while (QuadNum::rational(f, x.d) > x)
        --f;
    while (QuadNum::rational(f + 1, x.d) <= x)
        ++f;
    return f;
}

Form flap(const Form& q) { return {q.c, -q.b, q.a}; } // S o Q

struct RatM {
    Rat a, b, c, d;
};

RatM rmul(const RatM& x, const RatM& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

RatM rpow(const RatM& m, unsigned long n)
{
    RatM r{1, 0, 0, 1};
    for (unsigned long i = 0; i < n; ++i)
        r = rmul(r, m);
    return r;
}

HPoint rmove(const RatM& m, const HPoint& z) { return moebius(m.a, m.b, m.c, m.d, z); }

RatM rinv(const RatM& m) { return {m.d, -m.b, -m.c, m.a}; }

/* least n with P^n in Gamma^0(N) */
unsigned long level_exponent(long N, const IntMatrix& P)
{
    if (N == 1)
        return 1;
    IntMatrix Pr{mod(P.a, N), mod(P.b, N), mod(P.c, N), mod(P.d, N)};
    IntMatrix X = Pr;
    for (unsigned long n = 1;; ++n) {
        if (mod(X.b, N) == 0)
            return n;
        X = X * Pr;
        X = {mod(X.a, N), mod(X.b, N), mod(X.c, N), mod(X.d, N)};
        if (n > 8ul * N * N * N)
            throw invariant_error("level exponent search ran away");
    }
}

RatM half_turn_root(long N, const Form& q)
{
    RatMatrix h;
    try {
        h = projective(primitive_automorph_sqrt(q));
    } catch (const input_error&) {
        throw input_error("regular path: elliptic point on a geodesic whose unit has norm +1: " +
                          str(q));
    }
    unsigned long n = level_exponent(N, primitive_automorph(q));
    return rpow({h.a, h.b, h.c, h.d}, n);
}

bool antipodal_row(long N, const Form& f)
{
    /* tip = (N + sqrt(-N))/2 mod T^N */
    if (disc(f) != Int(N) * f.a * f.a)
        return false;
    return mod(f.b + Int(N) * f.a, 2 * Int(N) * f.a) == 0;
}

bool kappa_symmetric(long N, const Form& f)
{
    return f.a != 0 && mod(f.b, Int(N) * f.a) == 0;
}

} // namespace

std::string tag_label(CaseTag t)
{
    switch (t) {
    case CaseTag::Case1: return "1";
    case CaseTag::Case2: return "2";
    case CaseTag::Case3: return "3";
    case CaseTag::Case4: return "4";
    case CaseTag::Case5: return "5";
    case CaseTag::CuspZero: return "0";
    case CaseTag::CuspInf: return "∞";
    }
    return "?";
}

std::string tag_ascii(CaseTag t)
{
    return t == CaseTag::CuspInf ? "inf" : tag_label(t);
}

std::optional<Delta> delta(const Form& q)
{
    Geodesic g = geodesic(q);
    if (!g.beta)
        return std::nullopt;
    Int f = floor_quad(*g.beta);
    std::vector<Int> c;
    for (Int t = -f - 4; t <= -f + 4; ++t)
        if (crosses_sigma_bar(translate(q, t)))
            c.push_back(t);
    if (c.empty())
        return std::nullopt;
    if (c.size() == 1)
        return Delta{c[0], false};
    if (c.size() == 2) {
        int a = sign1(q.a);
        std::vector<Int> r;
        for (const Int& t : c)
            if (through_rho(translate(q, t), a))
                r.push_back(t);
        if (r.size() == 1)
            return Delta{r[0], true};
    }
    throw invariant_error("delta: ambiguous crossing for " + str(q));
}

IntMatrix coset_rep(long N, const IntMatrix& g)
{
    if (mod(g.d, N) == 0)
        return IntMatrix::S();
    Int k = centered(-g.b * inv_mod(g.d, N), N);
    return IntMatrix::T(k);
}

std::optional<Witness> fundamental_domain_meets(long N, const Form& q)
{
    if (disc(q) <= 0 || q.a == 0)
        throw input_error("fundamental_domain_meets needs an indefinite form with A != 0");
    long h = (N - 1) / 2;
    double c = center(q).get_d(), R = std::sqrt(radius2(q).get_d());
    Int lo = std::max<Int>(Int(-h), Int(std::floor(c - R)) - 1);
    Int hi = std::min<Int>(Int(h), Int(std::ceil(c + R)) + 1);
    for (Int k = lo; k <= hi; ++k)
        if (meets_f_closed(translate(q, -k)))
            return Witness{false, k};
    /* S^{-1} gamma meets F */
    if (meets_f_closed(act(IntMatrix{0, 1, -1, 0}, q)))
        return Witness{true, 0};
    return std::nullopt;
}

namespace {

bool meets_fn_interior(long N, const Form& q)
{
    long h = (N - 1) / 2;
    double c = center(q).get_d(), R = std::sqrt(radius2(q).get_d());
    Int lo = std::max<Int>(Int(-h), Int(std::floor(c - R)) - 1);
    Int hi = std::min<Int>(Int(h), Int(std::ceil(c + R)) + 1);
    for (Int k = lo; k <= hi; ++k)
        if (meets_f_interior(translate(q, -k)))
            return true;
    return meets_f_interior(act(IntMatrix{0, 1, -1, 0}, q));
}

} // namespace

std::pair<Form, IntMatrix> n_reduce_with(long N, const Form& q)
{
    if (disc(q) <= 0 || is_square(disc(q)))
        throw input_error("n_reduce needs a nonsquare positive discriminant: " + str(q));
    if (content(q) != 1)
        throw input_error("n_reduce needs a primitive form: " + str(q));
    /* already through the interior of F_N; the tip is only T-equivariant, so re-reducing
       could move it. Touching F_N at a corner alone does not count. */
    if (q.a != 0 && meets_fn_interior(N, q))
        return {q, IntMatrix::identity()};
    auto [red, g] = reduce_definite(tip(q));
    IntMatrix gam = coset_rep(N, g) * g;
    if (!in_gamma_upper(gam, N))
        throw invariant_error("n_reduce: coset product left Gamma^0(N)");
    return {act(gam, q), gam};
}

Form n_reduce(long N, const Form& q) { return n_reduce_with(N, q).first; }

Step s_matrix(long N, const Form& q)
{
    auto dl = delta(q);
    long h = (N - 1) / 2;
    if (!dl || abs(dl->t) > h)
        throw input_error("s_matrix: form near the cusp i*oo: " + str(q));
    const Int& d = dl->t;
    bool tie = dl->tie;
    if (d == 0 && !tie)
        throw input_error("s_matrix: form near the cusp 0: " + str(q));
    int a = sign1(q.a);
    Form qd = translate(q, d);
    if (!tie && N % 4 == 1 && mod(d, N) != 0 && mod(d * d + 1, N) == 0 && qd.a + qd.c == 0) {
        IntMatrix H{1, a, -a, 1};
        IntMatrix M = IntMatrix::T(inv_mod(d, N)) * H * IntMatrix::T(d);
        Form next = primitive(act_unscaled(M, q));
        return {next, {M, true}, CaseTag::Case4};
    }
    Int e = d;
    CaseTag tag = CaseTag::Case5;
    if (tie && d != a) {
        e = d - a;
        if (d == 0)
            tag = CaseTag::Case1;
        else if (d == -a)
            tag = CaseTag::Case2;
        else
            tag = CaseTag::Case3;
    }
    Int x = tag == CaseTag::Case2 ? Int(-a * (N + 1) / 2) : inv_mod(e, N);
    IntMatrix M = IntMatrix::T(x) * IntMatrix::S() * IntMatrix::T(e);
    if (!in_gamma_upper(M, N))
        throw invariant_error("s_matrix: " + str(M) + " not in Gamma^0(N)");
    return {act(M, q), {M, false}, tag};
}

Step n_step(long N, const Form& q)
{
    auto dl = delta(q);
    long h = (N - 1) / 2;
    if (!dl || abs(dl->t) > h) {
        QuadNum beta = *geodesic(q).beta;
        QuadNum shifted = beta + QuadNum::rational(frac(N, 2), beta.d);
        Int k = floor_quad(shifted / QuadNum::rational(N, beta.d));
        IntMatrix M = IntMatrix::T(-k * N);
        return {act(M, q), {M, false}, CaseTag::CuspInf};
    }
    if (dl->t == 0 && !dl->tie) {
        auto ds = delta(flap(q));
        if (!ds)
            throw invariant_error("n_step: no crossing for S o Q at " + str(q));
        IntMatrix M{1, 0, -ds->t, 1};
        return {act(M, q), {M, false}, CaseTag::CuspZero};
    }
    return s_matrix(N, q);
}

NCycle n_cycle(long N, const Form& q, std::size_t max_steps)
{
    if (N < 2 || !is_prime(N))
        throw input_error("n_cycle needs a prime level");
    Form cur = n_reduce(N, q);
    NCycle c{N, {}, {}, {}};
    std::map<FormKey, std::size_t> seen;
    for (;;) {
        auto [it, fresh] = seen.emplace(fkey(cur), c.forms.size());
        if (!fresh) {
            std::size_t j = it->second;
            if (j != 0) {
                c.forms.erase(c.forms.begin(), c.forms.begin() + j);
                c.matrices.erase(c.matrices.begin(), c.matrices.begin() + j);
                c.tags.erase(c.tags.begin(), c.tags.begin() + j);
            }
            return c;
        }
        if (c.forms.size() >= max_steps)
            throw input_error("n_cycle: step limit " + std::to_string(max_steps) + " exceeded");
        Step s = n_step(N, cur);
        c.forms.push_back(cur);
        c.matrices.push_back(s.m);
        c.tags.push_back(s.tag);
        cur = s.next;
    }
}

std::vector<CodeMatrix> n_code(const NCycle& c) { return c.matrices; }

std::vector<HPoint> elliptic_points_between(long N, const Form& q, const HPoint& from,
                                            const HPoint& to)
{
    Int D = disc(q);
    Rat ymin2 = std::min(from.im2, to.im2);
    double bound = 1.0 / std::sqrt(ymin2.get_d()) + 1.0;
    if (bound > 1e7)
        throw input_error("elliptic point search: segment too close to the real line");
    Rat lo = std::min(from.re, to.re), hi = std::max(from.re, to.re);
    std::vector<HPoint> out;
    long pmax = static_cast<long>(bound);
    for (long pa = 1; pa <= pmax; ++pa) {
        Int v = Int(pa) * pa * D - 4 * q.a * q.a;
        if (v < 0 || !is_square(v))
            continue;
        Int s = isqrt(v);
        std::set<Int> pbs;
        for (const Int& num : std::vector<Int>{Int(pa) * q.b + s, Int(pa) * q.b - s})
            if (mod(num, q.a) == 0)
                pbs.insert(num / q.a);
        for (const Int& pb : pbs) {
            Int n4 = pb * pb + 4;
            if (mod(pb, 2) != 0 || mod(n4, 4 * pa) != 0)
                continue;
            Int pc = n4 / (4 * pa);
            if (mod(pc, N) != 0 || gcd3(pa, pb, pc) != 1)
                continue;
            HPoint z{frac(-pb, 2 * pa), frac(1, Int(pa) * pa)};
            if (z.re > lo && z.re < hi && on_geodesic(q, z))
                out.push_back(z);
        }
    }
    bool rightwards = to.re > from.re;
    std::sort(out.begin(), out.end(), [&](const HPoint& x, const HPoint& y) {
        return rightwards ? x.re < y.re : x.re > y.re;
    });
    return out;
}

RegularPath regular_path(long N, const Form& q, const HPoint& tau0)
{
    if (!on_geodesic(q, tau0))
        throw input_error("regular_path: base point not on the geodesic");
    IntMatrix P = primitive_automorph(q);
    unsigned long n = level_exponent(N, P);
    IntMatrix M = power(P, n);
    HPoint tau1 = moebius(M, tau0);
    RegularPath out;
    out.level_automorph = M;
    auto el = elliptic_points_between(N, q, tau0, tau1);
    Form pt = point_form(tau0);
    if (disc(pt) == -4 && mod(pt.c, N) == 0)
        throw input_error("regular_path: base point is elliptic");
    if (el.empty()) {
        out.arcs.push_back({q, tau0, tau1});
        return out;
    }
    RatM Mh = half_turn_root(N, q);
    const HPoint& b = el.front();
    HPoint b1 = rmove(rinv(Mh), b);
    Form pb = point_form(b);
    int a = sign1(q.a);
    /* S_b^{a/2} = (I - a W_b)/sqrt2 with W_b the half-turn about b */
    IntMatrix W{-pb.b / 2, -pb.c, pb.a, pb.b / 2};
    IntMatrix H{1 - a * W.a, -a * W.b, -a * W.c, 1 - a * W.d};
    Form q2 = primitive(act_unscaled(H, q));
    RatM Mh2 = half_turn_root(N, q2);
    HPoint b2 = rmove(Mh2, b);
    out.arcs.push_back({q, tau0, b});
    out.arcs.push_back({q2, b, b2});
    out.arcs.push_back({q, b1, tau0});
    out.surgery = Surgery{b, b1, b2};
    return out;
}

HPoint antipode(long N, const Form& q, const HPoint& tau0)
{
    if (!on_geodesic(q, tau0))
        throw input_error("antipode: base point not on the geodesic");
    if (N > 1 && kappa_symmetric(N, q) && tau0 == tip_point(q)) {
        NCycle c = n_cycle(N, q);
        if (!(c.forms.front() == q))
            throw input_error("antipode: form is not N-reduced: " + str(q));
        for (std::size_t i = 1; i < c.size(); ++i) {
            const Form& f = c.forms[i];
            if (!kappa_symmetric(N, f))
                continue;
            HPoint t = tip_point(f);
            Rat shift = (t.re - tau0.re) / Rat(N);
            if (t.im2 == tau0.im2 && shift.get_den() == 1)
                continue;
            /* representative with real part in (-N/2, N/2] */
            Rat half = frac(N, 2);
            Int k = floor_rat((half - t.re) / Rat(N));
            t.re += Rat(k * N);
            return t;
        }
        throw invariant_error("antipode: no second kappa-fixed point on the cycle");
    }
    RatM Mh = half_turn_root(N, q);
    HPoint th = rmove(Mh, tau0);
    if (!elliptic_points_between(N, q, tau0, th).empty())
        throw input_error("antipode: surgery on the first half is not supported here");
    return th;
}

std::vector<PlotArc> cycle_arcs(const NCycle& c, std::size_t rows)
{
    const long N = c.N;
    const long h = (N - 1) / 2;
    const double eps = 1e-12;
    auto inside = [&](double x, double y) {
        for (long k = -h; k <= h; ++k) {
            double u = x - k;
            if (std::fabs(u) <= 0.5 + eps && u * u + y * y >= 1 - eps)
                return true;
        }
        return x * x + y * y <= 1 + eps && (x + 1) * (x + 1) + y * y >= 1 - eps &&
               (x - 1) * (x - 1) + y * y >= 1 - eps;
    };
    std::vector<PlotArc> out;
    for (std::size_t r = 0; r < std::min(rows, c.size()); ++r) {
        const Form& f = c.forms[r];
        double cx = center(f).get_d(), R = std::sqrt(radius2(f).get_d());
        double L = cx - R, U = cx + R;
        std::vector<double> br{L, U};
        for (long k = -h; k <= h; ++k)
            for (double e : {k - 0.5, k + 0.5})
                if (e > L && e < U)
                    br.push_back(e);
        auto circle = [&](double m) {
            if (std::fabs(cx - m) < 1e-15)
                return;
            double x = (m + cx) / 2 + (1 - R * R) / (2 * (cx - m));
            if (x > L && x < U)
                br.push_back(x);
        };
        for (long k = -h - 1; k <= h + 1; ++k)
            circle(static_cast<double>(k));
        std::sort(br.begin(), br.end());
        auto yat = [&](double x) { return std::sqrt(std::max(0.0, R * R - (x - cx) * (x - cx))); };
        std::vector<std::pair<double, double>> iv;
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            double x0 = br[i], x1 = br[i + 1];
            if (x1 - x0 < 1e-14)
                continue;
            double xm = (x0 + x1) / 2;
            if (!inside(xm, yat(xm)))
                continue;
            if (!iv.empty() && std::fabs(iv.back().second - x0) < 1e-12)
                iv.back().second = x1;
            else
                iv.push_back({x0, x1});
        }
        bool rightwards = f.a > 0;
        if (!rightwards)
            std::reverse(iv.begin(), iv.end());
        for (auto [x0, x1] : iv) {
            if (!rightwards)
                std::swap(x0, x1);
            out.push_back({r, f, c.tags[r], x0, yat(x0), x1, yat(x1)});
        }
    }
    return out;
}

std::size_t cusp_half_length(const NCycle& c)
{
    for (std::size_t i = 1; i < c.size(); ++i)
        if (antipodal_row(c.N, c.forms[i]))
            return i;
    throw invariant_error("cusp cycle never reaches the antipodal tip");
}

Component cusp_component(long N)
{
    Form q0{1, 0, -N};
    NCycle cyc = n_cycle(N, q0);
    if (!(cyc.forms.front() == q0))
        throw invariant_error("cusp cycle does not start at [1,0,-N]");
    std::size_t rows = cusp_half_length(cyc);
    Component comp{N, ComponentKind::Cusp, make_class(q0), q0, cyc, rows, false, false, {}};
    comp.arcs = cycle_arcs(comp.cycle, rows);
    return comp;
}

std::vector<Component> components(long N)
{
    if (N < 5 || !is_prime(N))
        throw input_error("components needs a prime N >= 5");
    std::vector<Component> out{cusp_component(N)};
    std::vector<HeegnerContext> ctxs{HeegnerContext(N, Int(4 * N), 0)};
    if (N % 4 == 1)
        ctxs.emplace_back(N, Int(N), Int(N));
    for (const HeegnerContext& ctx : ctxs) {
        FormClass one = principal(ctx.D);
        std::vector<FormClass> used;
        for (const HeegnerForm& hf : heegner_forms(ctx)) {
            if (hf.cls == one || std::find(used.begin(), used.end(), hf.cls) != used.end())
                continue;
            used.push_back(hf.cls);
            used.push_back(inverse(hf.cls));
            NCycle cyc = n_cycle(N, hf.form);
            bool half = N % 4 == 1;
            Component comp{N, ComponentKind::NonCusp, hf.cls, hf.form, cyc, cyc.size(),
                           half, half, {}};
            comp.arcs = cycle_arcs(comp.cycle, comp.rows);
            out.push_back(std::move(comp));
        }
    }
    long k = kappa(N);
    if (static_cast<long>(out.size()) != k)
        throw invariant_error("components: found " + std::to_string(out.size()) +
                              " components, kappa(" + std::to_string(N) + ") = " +
                              std::to_string(k));
    return out;
}

} // namespace realocus
