#include "oracle.hpp"

#include <cmath>

#include <doctest.h>

#include "realocus/qform.hpp"

using namespace realocus;

namespace {

IntMatrix random_sl2(oracle::Rng& rng)
{
    IntMatrix m = IntMatrix::identity();
    int len = static_cast<int>(rng(1, 6));
    for (int i = 0; i < len; ++i) {
        m = m * IntMatrix::T(rng(-4, 4));
        if (rng(0, 1))
            m = m * IntMatrix::S();
    }
    return m;
}

Form random_form(oracle::Rng& rng, long box)
{
    return {rng(-box, box), rng(-box, box), rng(-box, box)};
}

// primitive, positive nonsquare discriminant
Form random_indefinite(oracle::Rng& rng, long box)
{
    for (;;) {
        Form q = random_form(rng, box);
        Int D = disc(q);
        if (D > 0 && !is_square(D) && content(q) == 1)
            return q;
    }
}

} // namespace

TEST_CASE("discriminant is invariant under act")
{
    oracle::Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        Form q = random_form(rng, 50);
        IntMatrix m = random_sl2(rng);
        REQUIRE(m.det() == 1);
        CHECK(disc(act(m, q)) == disc(q));
    }
}

TEST_CASE("act is a left action and inner is invariant")
{
    oracle::Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        Form p = random_form(rng, 30), q = random_form(rng, 30);
        IntMatrix m1 = random_sl2(rng), m2 = random_sl2(rng);
        CHECK(act(m1 * m2, q) == act(m1, act(m2, q)));
        CHECK(inner(act(m1, p), act(m1, q)) == inner(p, q));
    }
    Form q{3, -5, 7};
    CHECK(act(IntMatrix::identity(), q) == q);
}

TEST_CASE("inner product examples")
{
    CHECK(inner(Form{1, 4, -1}, Form{1, 4, -1}) == 20);
    for (long v = -3; v <= 3; ++v)
        for (long u = -3; u <= 3; ++u)
            for (long N : {5, 13, 37})
                CHECK(inner(Form{v, 2 * u, N * v}, Form{1, 0, -N}) == 0);
    CHECK(inner(Form{1, 0, 1}, Form{1, 0, -1}) == 0);
}

TEST_CASE("translation matches the T action")
{
    Form q{-4, -18, 4};
    CHECK(act(IntMatrix::T(-22), q) == Form{-4, -194, -2328});
    CHECK(translate(q, -22) == Form{-4, -194, -2328});
    CHECK(act_quad(s_half(-1), Form{-9, 8, 9}) == Form{-4, -18, 4});
    Form u{1, 0, -1};
    CHECK(act_quad(s_half(1), act_quad(s_half(1), u)) == act(IntMatrix{0, 1, -1, 0}, u));
}

TEST_CASE("geodesic endpoints")
{
    Geodesic g = geodesic(Form{1, 0, -37});
    REQUIRE(g.alpha);
    REQUIRE(g.beta);
    CHECK(*g.alpha == QuadNum(0, Rat(-1, 2), 148));
    CHECK(g.beta->to_double() == doctest::Approx(std::sqrt(37.0)));
    Geodesic h = geodesic(Form{0, 1, 0});
    CHECK(!h.alpha);
    REQUIRE(h.beta);
    CHECK(h.beta->to_double() == 0.0);
    Geodesic u = geodesic(Form{1, 0, -1});
    CHECK(u.alpha->to_double() == -1.0);
    CHECK(u.beta->to_double() == 1.0);
}

TEST_CASE("tip")
{
    CHECK(tip(Form{1, 0, -13}) == Form{1, 0, 13});
    HPoint t = tip_point(Form{-3, 97, -776});
    CHECK(t.re == Rat(97, 6));
    CHECK(t.im2 == Rat(97, 36));
    oracle::Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        Form q = random_indefinite(rng, 25);
        if (q.a == 0)
            continue;
        Int k = rng(-9, 9);
        CHECK(tip(translate(q, k)) == act(IntMatrix::T(k), tip(q)));
    }
}

TEST_CASE("intersection numbers")
{
    CHECK(intersection_number(Form{0, 1, 0}, Form{1, 0, -1}) == 1);
    CHECK(intersection_number(Form{1, 0, -1}, Form{0, 1, 0}) == -1);
    CHECK(intersection_number(Form{1, 4, -1}, Form{1, 4, -1}) == 0);
    oracle::Rng rng(14);
    int crossing = 0;
    while (crossing < 100) {
        Form p = random_indefinite(rng, 12), q = random_indefinite(rng, 12);
        int i = intersection_number(p, q);
        CHECK(i == -intersection_number(q, p));
        IntMatrix m = random_sl2(rng);
        CHECK(intersection_number(act(m, p), act(m, q)) == i);
        if (i != 0)
            ++crossing;
    }
}

TEST_CASE("reduced forms: definition examples")
{
    CHECK(is_reduced_indefinite(Form{0, 1, 0}));
    CHECK(is_reduced_indefinite(Form{1, 4, -1}));
    CHECK_FALSE(is_reduced_indefinite(Form{11, -70, 98}));
    CHECK(is_nearly_reduced(Form{1, 0, -37}));
}

TEST_CASE("reduced iff crossing sigma and meeting the interior of F, box 20")
{
    long checked = 0;
    for (long A = -20; A <= 20; ++A)
        for (long B = -20; B <= 20; ++B)
            for (long C = -20; C <= 20; ++C) {
                Form q{A, B, C};
                Int D = disc(q);
                if (D <= 0 || is_square(D) || content(q) != 1)
                    continue;
                bool cross = oracle::crosses_sigma(A, B, C);
                bool inner_f = oracle::meets_interior(A, B, C);
                CHECK_MESSAGE(crosses_sigma_bar(q) == cross, str(q));
                CHECK_MESSAGE(meets_f_interior(q) == inner_f, str(q));
                CHECK_MESSAGE(is_reduced_indefinite(q) == (cross && inner_f), str(q));
                ++checked;
            }
    CHECK(checked > 20000);
}

// Only for D < 4A^2, the vertex case of normalisation. With D > 4A^2 a
// geodesic like [5, 14, 2] runs from rho into the sector under |tau + 1| = 1
// and neither it nor its S image meets the interior.
TEST_CASE("through rho, exactly one of Q and S o Q meets the interior")
{
    int seen = 0;
    for (long A = -15; A <= 15; ++A)
        for (long B = -15; B <= 15; ++B)
            for (long C = -15; C <= 15; ++C) {
                Form q{A, B, C};
                Int D = disc(q);
                if (D <= 0 || is_square(D) || content(q) != 1)
                    continue;
                if (!through_rho(q, 1) && !through_rho(q, -1))
                    continue;
                if (D >= 4 * A * A)
                    continue;
                Form s = act(IntMatrix::S(), q);
                CHECK_MESSAGE(oracle::meets_interior(A, B, C) !=
                                  oracle::meets_interior(s.a.get_si(), s.b.get_si(), s.c.get_si()),
                              str(q));
                ++seen;
            }
    CHECK(seen > 0);
}

TEST_CASE("J interval against integer translates")
{
    Form q{1, 4, -1};
    Interval J = j_interval(q);
    int inside = 0;
    for (long t = -10; t <= 10; ++t) {
        Form qt = translate(q, t);
        bool in = J.lo <= QuadNum::rational(t, J.lo.d) && QuadNum::rational(t, J.lo.d) <= J.hi;
        bool brute = oracle::crosses_sigma(qt.a, qt.b, qt.c);
        CHECK_MESSAGE(in == brute, "t = " << t);
        inside += in;
    }
    CHECK(inside >= 1);
}

TEST_CASE("exactly one integral translate is reduced")
{
    oracle::Rng rng(15);
    int done = 0;
    while (done < 100) {
        Form q = random_indefinite(rng, 30);
        if (q.a == 0 || !is_nearly_reduced(q))
            continue;
        int hits = 0;
        for (long t = -200; t <= 200; ++t)
            hits += is_reduced_indefinite(translate(q, t));
        if (hits == 0)
            continue; // the vertex case, no normalisation
        CHECK_MESSAGE(hits == 1, str(q));
        auto [r, d] = normalize(q);
        CHECK(r == translate(q, d));
        CHECK(is_reduced_indefinite(r));
        ++done;
    }
}

TEST_CASE("normalize")
{
    Form q{1, 4, -1};
    auto [r0, d0] = normalize(q);
    CHECK(r0 == q);
    CHECK(d0 == 0);
    auto [r5, d5] = normalize(translate(q, -5));
    CHECK(r5 == q);
    CHECK(d5 == 5);
}

TEST_CASE("definite reduction")
{
    auto [r, m] = reduce_definite(Form{1, 0, 1});
    CHECK(r == Form{1, 0, 1});
    CHECK(m == IntMatrix::identity());
    auto [r2, m2] = reduce_definite(Form{5, 4, 1});
    CHECK(r2 == Form{1, 0, 1});
    CHECK(act(m2, Form{5, 4, 1}) == r2);
    CHECK_THROWS_AS(reduce_definite(Form{1, 4, -1}), input_error);

    std::set<std::tuple<long, long, long>> reps;
    for (long a = 1; a <= 40; ++a)
        for (long b = -40; b <= 40; ++b) {
            long num = b * b + 148;
            if (num % (4 * a))
                continue;
            Form p{a, b, num / (4 * a)};
            if (content(p) != 1)
                continue;
            auto [f, w] = reduce_definite(p);
            CHECK(act(w, p) == f);
            CHECK(abs(f.b) <= f.a);
            CHECK(f.a <= f.c);
            reps.insert({f.a.get_si(), f.b.get_si(), f.c.get_si()});
        }
    CHECK(static_cast<long>(reps.size()) == oracle::definite_count(-148));
}
