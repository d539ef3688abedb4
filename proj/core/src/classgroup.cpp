#include "realocus/classgroup.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace realocus {

namespace {

using Key = std::tuple<Int, Int, Int>;

Key key(const Form& f) { return {abs(f.a), f.a, f.b}; }

bool less_key(const Form& x, const Form& y) { return key(x) < key(y); }

void check_disc(const Int& D)
{
    if (!is_discriminant(D))
        throw input_error("not a nonsquare discriminant: " + str(D));
}

} // namespace

bool is_discriminant(const Int& D)
{
    Int r = mod(D, 4);
    return (r == 0 || r == 1) && !is_square(D);
}

bool is_classically_reduced(const Form& q)
{
    Int D = disc(q);
    if (D <= 0 || q.a == 0)
        return false;
    Int s = isqrt(D);
    /* sqrt D irrational: x < sqrt D iff x <= s, x > sqrt D iff x > s */
    Int twice = 2 * abs(q.a);
    return q.b > 0 && q.b <= s && s - q.b < twice && twice <= s + q.b;
}

Form rho_step(const Form& q)
{
    Int D = disc(q);
    Int s = isqrt(D);
    Int c = q.c, ac = abs(c);
    if (c == 0)
        throw input_error("rho_step: c = 0 in " + str(q));
    Int lo;
    if (ac > s)
        lo = -ac + 1; // window (-|c|, |c|]
    else
        lo = s - 2 * ac + 1; // window (sqrt D - 2|c|, sqrt D)
    Int r = lo + mod(-q.b - lo, 2 * ac);
    return {c, r, (r * r - D) / (4 * c)};
}

Form reduce_indefinite(const Form& q)
{
    Int D = disc(q);
    check_disc(D);
    if (D < 0)
        throw input_error("reduce_indefinite needs D > 0");
    Form f = q;
    if (f.a == 0)
        f = {f.c, -f.b, f.a};
    for (int i = 0; !is_classically_reduced(f); ++i) {
        if (i > 100000)
            throw invariant_error("reduce_indefinite: no convergence for " + str(q));
        f = rho_step(f);
    }
    return f;
}

std::vector<Form> reduced_cycle(const Form& q)
{
    Form f0 = reduce_indefinite(q);
    std::vector<Form> out{f0};
    for (Form f = rho_step(f0); !(f == f0); f = rho_step(f)) {
        out.push_back(f);
        if (out.size() > 1000000)
            throw invariant_error("reduced_cycle: runaway");
    }
    return out;
}

FormClass make_class(const Form& q)
{
    Int D = disc(q);
    check_disc(D);
    if (content(q) != 1)
        throw input_error("class of a non-primitive form " + str(q));
    if (D < 0) {
        Form p = q.a > 0 ? q : negate(q);
        return {reduce_definite(p).first, D};
    }
    std::vector<Form> c = reduced_cycle(q);
    /* wide classes: Q ~ [-a, b, -c], the twist by the ideal (sqrt D) */
    Form r = c.front();
    std::vector<Form> c2 = reduced_cycle(Form{-r.a, r.b, -r.c});
    Form best = c.front();
    for (const auto* v : {&c, &c2})
        for (const Form& f : *v)
            if (less_key(f, best))
                best = f;
    return {best, D};
}

Form principal_form(const Int& D)
{
    check_disc(D);
    Int b = mod(D, 2);
    return {1, b, (b * b - D) / 4};
}

FormClass principal(const Int& D) { return make_class(principal_form(D)); }

FormClass inverse(const FormClass& c)
{
    return make_class({c.rep.a, -c.rep.b, c.rep.c});
}

FormClass compose(const FormClass& x, const FormClass& y)
{
    if (x.D != y.D)
        throw input_error("compose: discriminants differ");
    const Form &f = x.rep, &g = y.rep;
    Int D = x.D;
    Int beta = (f.b + g.b) / 2;
    Int g1, u1, v1, e, u2, w;
    mpz_gcdext(g1.get_mpz_t(), u1.get_mpz_t(), v1.get_mpz_t(), f.a.get_mpz_t(), g.a.get_mpz_t());
    mpz_gcdext(e.get_mpz_t(), u2.get_mpz_t(), w.get_mpz_t(), g1.get_mpz_t(), beta.get_mpz_t());
    Int u = u2 * u1, v = u2 * v1;
    Int A = f.a * g.a / (e * e);
    Int B = (u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + D) / 2) / e;
    B = mod(B, 2 * A);
    Int C = (B * B - D) / (4 * A);
    Form h{A, B, C};
    if (disc(h) != D)
        throw invariant_error("compose: discriminant drift");
    return make_class(h);
}

std::vector<FormClass> all_classes(const Int& D)
{
    check_disc(D);
    std::vector<FormClass> out;
    if (D < 0) {
        Int amax = isqrt(-D / 3) + 1;
        for (Int a = 1; a <= amax; ++a)
            for (Int b = -a + 1; b <= a; ++b) {
                Int num = b * b - D;
                if (mod(num, 4 * a) != 0)
                    continue;
                Int c = num / (4 * a);
                if (c < a || (c == a && b < 0))
                    continue;
                Form f{a, b, c};
                if (content(f) == 1)
                    out.push_back({f, D});
            }
        return out;
    }
    Int s = isqrt(D);
    std::set<Key> seen;
    for (Int b = 1; b <= s; ++b) {
        if (mod(b - D, 2) != 0)
            continue;
        Int num = b * b - D; // = 4ac < 0
        for (Int aa = (s - b) / 2 + 1; 2 * aa <= s + b; ++aa) {
            if (mod(num, 4 * aa) != 0)
                continue;
            for (int sg : {1, -1}) {
                Int a = sg * aa;
                Form f{a, b, num / (4 * a)};
                if (content(f) != 1 || !is_classically_reduced(f))
                    continue;
                FormClass cls = make_class(f);
                if (seen.insert(key(cls.rep)).second)
                    out.push_back(cls);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const FormClass& x, const FormClass& y) {
        return less_key(x.rep, y.rep);
    });
    return out;
}

long class_number(const Int& D) { return static_cast<long>(all_classes(D).size()); }

std::vector<FormClass> ambiguous_classes(const Int& D)
{
    FormClass one = principal(D);
    std::vector<FormClass> out;
    for (const FormClass& c : all_classes(D))
        if (compose(c, c) == one)
            out.push_back(c);
    return out;
}

long kappa(long N)
{
    if (N < 5 || !is_prime(N))
        throw input_error("kappa needs a prime N >= 5");
    long h4 = class_number(Int(4 * N));
    long h1 = N % 4 == 1 ? class_number(Int(N)) : 1;
    if ((h4 + h1) % 2 != 0)
        throw invariant_error("kappa: odd numerator for N=" + std::to_string(N));
    return (h4 + h1) / 2;
}

HeegnerContext::HeegnerContext(long N_, Int D_, Int r_) : N(N_), D(std::move(D_)), r(mod(r_, 2 * N_))
{
    if (!is_prime(N))
        throw input_error("HeegnerContext needs a prime level");
    if (!is_discriminant(D))
        throw input_error("HeegnerContext: bad discriminant " + str(D));
    if (mod(r * r - D, 4 * N) != 0)
        throw input_error("HeegnerContext: r^2 != D mod 4N");
    /* conductor prime to N: N^2 may not divide D unless D/N^2 is not a discriminant */
    if (mod(D, Int(N) * N) == 0 && is_discriminant(D / (Int(N) * N)))
        throw input_error("HeegnerContext: conductor divisible by N");
}

std::vector<HeegnerForm> heegner_forms(const HeegnerContext& ctx)
{
    long h = class_number(ctx.D);
    std::vector<HeegnerForm> out;
    std::set<Key> seen;
    long N = ctx.N;
    Int bound = 64 * abs(ctx.D) + 64;
    for (Int aa = 1; aa <= bound && static_cast<long>(out.size()) < h; ++aa) {
        if (mod(aa, N) == 0)
            continue;
        for (int sg : {1, -1}) {
            if (sg < 0 && ctx.D < 0)
                continue;
            Int A = sg * aa;
            for (Int k = -aa; k <= aa; ++k) {
                Int B = ctx.r + 2 * N * k;
                Int num = B * B - ctx.D;
                if (mod(num, 4 * A) != 0)
                    continue;
                Form f{A, B, num / (4 * A)};
                if (mod(f.c, N) != 0 || content(f) != 1)
                    continue;
                FormClass cls = make_class(f);
                if (seen.insert(key(cls.rep)).second)
                    out.push_back({f, cls});
            }
        }
    }
    if (static_cast<long>(out.size()) != h)
        throw invariant_error("heegner_forms: found " + std::to_string(out.size()) + " of " +
                              std::to_string(h) + " classes");
    return out;
}

Form frobenius_form(const HeegnerContext& ctx)
{
    return {ctx.N, ctx.r, (ctx.r * ctx.r - ctx.D) / (4 * ctx.N)};
}

int genus_character(const Int& D0, const HeegnerContext& ctx)
{
    if (!is_fundamental(D0))
        throw input_error("genus_character: " + str(D0) + " is not fundamental");
    if (mod(ctx.D, D0) != 0)
        throw input_error("genus_character: D0 does not divide D");
    Int D1 = ctx.D / D0;
    Int r = mod(D1, 4);
    if (r != 0 && r != 1)
        throw input_error("genus_character: D/D0 is not a discriminant");
    Int N = ctx.N;
    if (mod(D0, N) != 0)
        return kronecker(D0, N);
    return kronecker(D1, N);
}

int genus_character_of(const Int& D0, const Form& p)
{
    if (disc(p) >= 0 || p.a <= 0)
        throw input_error("genus_character_of needs a positive definite form");
    for (Int x = 0; x < 200; ++x)
        for (Int y = 0; y < 200; ++y) {
            if (gcd(x, y) != 1)
                continue;
            Int m = p.a * x * x + p.b * x * y + p.c * y * y;
            if (gcd(m, D0) == 1)
                return kronecker(D0, m);
        }
    throw invariant_error("genus_character_of: no coprime value found");
}

} // namespace realocus
