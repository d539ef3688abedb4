#include "oracle.hpp"

#include <doctest.h>

#include "realocus/coding.hpp"

using namespace realocus;

namespace {

struct Row {
    Form q;
    IntMatrix m;
    const char* tag;
};

// N = 13, Q = [-13, 108, -213]
const std::vector<Row> table13 = {
    {{11, -70, 98}, {3, -13, 1, -4}, "5"},
    {{-6, 18, 11}, {1, 0, 1, 1}, "0"},
    {{-13, -4, 11}, {1, 0, 1, 1}, "5"},
    {{2, -26, 11}, {1, -13, 0, 1}, "inf"},
    {{2, 26, 11}, {1, 0, 1, 1}, "5"},
    {{-13, 4, 11}, {1, 0, 1, 1}, "0"},
    {{-6, -18, 11}, {-4, -13, 1, 3}, "5"},
    {{11, 70, 98}, {-6, -13, 1, 2}, "3"},
    {{2, -2, -73}, {-2, 13, 1, -7}, "3"},
    {{11, 18, -6}, {1, 0, -3, 1}, "0"},
    {{11, -18, -6}, {-7, 13, 1, -2}, "2"},
    {{2, 2, -73}, {2, -13, 1, -6}, "3"},
};

// N = 5, Q = [1, -1, -3]
const std::vector<Row> table5 = {
    {{1, -1, -3}, {-1, 5, -1, 3}, "4"},
    {{3, -16, 17}, {1, -5, 0, 1}, "inf"},
    {{3, 14, 12}, {1, 0, 1, 1}, "3"},
    {{1, -10, 12}, {1, -10, 0, 1}, "inf"},
    {{1, 10, 12}, {1, 0, 1, 1}, "3"},
    {{3, -14, 12}, {1, -5, 0, 1}, "inf"},
    {{3, 16, 17}, {3, 5, -1, -1}, "4"},
    {{1, 1, -3}, {-1, 0, 1, -1}, "5"},
    {{-1, -5, -3}, {1, 5, 0, 1}, "inf"},
    {{-1, 5, -3}, {-1, 0, 1, -1}, "5"},
};

void check_table(const NCycle& c, const std::vector<Row>& rows)
{
    REQUIRE(c.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK_MESSAGE(c.forms[i] == rows[i].q, "row " << i);
        CHECK_MESSAGE(c.matrices[i].m == rows[i].m, "row " << i);
        CHECK_MESSAGE(tag_ascii(c.tags[i]) == rows[i].tag, "row " << i);
    }
}

// M o Q. A half turn m / sqrt2 moves the geodesic like m; the form is the
// primitive one on the image, and D changes by a factor 4 (the N = 5 table
// alternates between 13 and 52).
Form apply(const CodeMatrix& cm, const Form& q)
{
    if (!cm.half_turn)
        return act(cm.m, q);
    return primitive(act_unscaled(cm.m, q));
}

void check_cycle(const NCycle& c)
{
    long N = c.N;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const CodeMatrix& cm = c.matrices[i];
        if (cm.half_turn) {
            CHECK(cm.m.det() == 2);
        } else {
            CHECK(cm.m.det() == 1);
            CHECK_MESSAGE(in_gamma_upper(cm.m, N), str(cm.m));
            CHECK(mod(cm.m.b, N) == 0);
        }
        Form next = c.forms[(i + 1) % c.size()];
        Form img = apply(cm, c.forms[i]);
        CHECK_MESSAGE((img == next || negate(img) == next), "row " << i);
    }
}

std::vector<long> primes(long lo, long hi)
{
    std::vector<long> out;
    for (long p = lo; p <= hi; ++p)
        if (oracle::prime(p))
            out.push_back(p);
    return out;
}

} // namespace

TEST_CASE("golden table, N = 13")
{
    NCycle c = n_cycle(13, Form{-13, 108, -213});
    check_table(c, table13);
    check_cycle(c);
    CHECK(tag_label(c.tags[3]) == "∞");
    for (CaseTag t : c.tags)
        CHECK(t != CaseTag::Case4);
}

TEST_CASE("golden table, N = 5")
{
    NCycle c = n_cycle(5, Form{1, -1, -3});
    check_table(c, table5);
    check_cycle(c);
    CHECK(c.tags[0] == CaseTag::Case4);
    CHECK(c.tags[6] == CaseTag::Case4);
    CHECK(c.matrices[0].half_turn);
    CHECK(n_code(c).size() == 10);
}

TEST_CASE("parabolic 2-cycles [2, 2N, -1]")
{
    for (long N : {5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
        NCycle c = n_cycle(N, Form{2, 2 * N, -1});
        REQUIRE(c.size() == 2);
        CHECK(c.matrices[0].m == IntMatrix{1, 0, -2 * N, 1});
        CHECK(c.matrices[1].m == IntMatrix{1, -N, 0, 1});
        for (const CodeMatrix& m : c.matrices)
            CHECK(abs(m.m.trace()) == 2);
        check_cycle(c);
    }
}

TEST_CASE("code matrices of random cycles")
{
    oracle::Rng rng(31);
    for (int i = 0; i < 60;) {
        Form q{rng(-15, 15), rng(-30, 30), rng(-15, 15)};
        Int D = disc(q);
        if (D <= 0 || is_square(D) || content(q) != 1)
            continue;
        long N = primes(5, 31)[rng(0, 7)];
        NCycle c = n_cycle(N, q);
        CHECK(c.size() >= 1);
        check_cycle(c);
        ++i;
    }
}

TEST_CASE("N-reduction")
{
    CHECK(n_reduce(13, Form{-13, 108, -213}) == Form{11, -70, 98});
    auto [r, g] = n_reduce_with(13, Form{-13, 108, -213});
    CHECK(in_gamma_upper(g, 13));
    CHECK(act(g, Form{-13, 108, -213}) == r);
    CHECK(n_reduce(5, Form{1, -1, -3}) == Form{1, -1, -3});

    oracle::Rng rng(32);
    for (int i = 0; i < 100;) {
        Form q{rng(-40, 40), rng(-40, 40), rng(-40, 40)};
        Int D = disc(q);
        if (D <= 0 || is_square(D) || content(q) != 1)
            continue;
        long N = primes(5, 43)[rng(0, 10)];
        auto [red, gam] = n_reduce_with(N, q);
        CHECK(in_gamma_upper(gam, N));
        CHECK(act(gam, q) == red);
        CHECK_MESSAGE(n_reduce(N, red) == red, N << " " << str(q) << " -> " << str(red) << " -> " << str(n_reduce(N, red)));
        if (red.a != 0) {
            auto w = fundamental_domain_meets(N, red);
            REQUIRE_MESSAGE(w.has_value(), str(red));
            if (w->flap)
                CHECK(meets_f_closed(act(IntMatrix{0, 1, -1, 0}, red)));
            else
                CHECK(meets_f_closed(translate(red, -w->k)));
        }
        ++i;
    }
}

TEST_CASE("fundamental domain F_N")
{
    for (long N : {5L, 13L, 37L})
        CHECK(fundamental_domain_meets(N, Form{1, 0, -N}).has_value());
    CHECK(fundamental_domain_meets(13, Form{11, -70, 98}).has_value());
    // the coset representative lands every SL2 matrix in Gamma^0(N)
    oracle::Rng rng(33);
    for (int i = 0; i < 200; ++i) {
        IntMatrix g = IntMatrix::identity();
        for (int k = 0; k < 5; ++k)
            g = g * IntMatrix::T(rng(-6, 6)) * IntMatrix::S();
        for (long N : {5L, 13L})
            CHECK(in_gamma_upper(coset_rep(N, g) * g, N));
    }
}

TEST_CASE("S matrix cases")
{
    Step s = s_matrix(13, Form{11, -70, 98});
    CHECK(s.tag == CaseTag::Case5);
    CHECK(s.m.m == IntMatrix{3, -13, 1, -4});
    s = s_matrix(5, Form{1, -1, -3});
    CHECK(s.tag == CaseTag::Case4);
    CHECK(s.m.m == IntMatrix{-1, 5, -1, 3});
    s = s_matrix(13, Form{11, -18, -6});
    CHECK(s.tag == CaseTag::Case2);
    CHECK(s.m.m == IntMatrix{-7, 13, 1, -2});
}

TEST_CASE("case 4 on geodesics through order-2 elliptic points")
{
    for (long N : {5L, 13L, 17L, 29L, 37L}) {
        for (Form q : {Form{1, 0, -N}, Form{1, N, N * (N - 1) / 4}}) {
            NCycle c = n_cycle(N, q);
            bool case4 = false;
            for (CaseTag t : c.tags)
                case4 = case4 || t == CaseTag::Case4;
            CHECK_MESSAGE(case4, "N = " << N << " " << str(q));
        }
    }
}

TEST_CASE("cycle guard")
{
    CHECK_THROWS(n_cycle(13, Form{-13, 108, -213}, 3));
    CHECK_THROWS_AS(n_cycle(13, Form{1, 0, -169}), input_error);
}

TEST_CASE("regular path, level 1 example")
{
    Form q{1, 4, -1};
    HPoint tau0{Rat(-3, 2), Rat(19, 4)};
    REQUIRE(on_geodesic(q, tau0));
    RegularPath p = regular_path(1, q, tau0);
    REQUIRE(p.surgery.has_value());
    CHECK(p.surgery->b == HPoint{0, 1});
    CHECK(p.surgery->b1 == HPoint{-4, 1});
    CHECK(p.surgery->b2 == HPoint{1, 1});
    REQUIRE(!p.arcs.empty());
    CHECK(p.arcs.front().from == tau0);
    // consecutive arcs meet, up to the identification of b' with b''
    for (std::size_t i = 0; i + 1 < p.arcs.size(); ++i) {
        CHECK(on_geodesic(p.arcs[i].on, p.arcs[i].from));
        CHECK(on_geodesic(p.arcs[i].on, p.arcs[i].to));
        bool joined = p.arcs[i].to == p.arcs[i + 1].from ||
                      (p.arcs[i].to == p.surgery->b2 && p.arcs[i + 1].from == p.surgery->b1);
        CHECK(joined);
    }
    CHECK(p.arcs.back().to == tau0);
}

TEST_CASE("regular path without elliptic points")
{
    // Gamma^0(7) has no order-2 elliptic points
    Form q{1, 0, -7};
    HPoint t = tip_point(q);
    RegularPath p = regular_path(7, q, t);
    CHECK_FALSE(p.surgery.has_value());
    REQUIRE(p.arcs.size() == 1);
    CHECK(p.arcs[0].from == t);
    CHECK(p.arcs[0].to == moebius(p.level_automorph, t));
    CHECK(in_gamma_upper(p.level_automorph, 7));
    CHECK(p.level_automorph == IntMatrix{8, 21, 3, 8});
}

TEST_CASE("antipode")
{
    for (long N : {5L, 13L, 17L, 29L, 37L, 41L}) {
        HPoint t{0, N};
        HPoint a = antipode(N, Form{1, 0, -N}, t);
        HPoint want{Rat(N, 2), Rat(N, 4)};
        CHECK_MESSAGE(a == want, "N = " << N);
    }
    // no elliptic points at level 7; D = 13 has a unit of norm -1
    Form q{1, 3, -1};
    HPoint a = antipode(7, q, tip_point(q));
    CHECK(on_geodesic(q, a));
    CHECK_FALSE(a == tip_point(q));
    // at level 1 the first half always passes an order-2 point: diagnostic
    CHECK_THROWS_AS(antipode(1, Form{1, 4, -1}, HPoint{Rat(-3, 2), Rat(19, 4)}), input_error);
}

TEST_CASE("plot arcs of the N = 13 cycle")
{
    NCycle c = n_cycle(13, Form{-13, 108, -213});
    auto arcs = cycle_arcs(c, 4);
    CHECK(arcs.size() == 4);
    for (const PlotArc& a : arcs) {
        CHECK(a.row < 4);
        CHECK(std::abs(a.x0) <= 7.0);
        CHECK(std::abs(a.x1) <= 7.0);
        CHECK(a.y0 > 0);
        CHECK(a.y1 > 0);
    }
}

TEST_CASE("components")
{
    auto c37 = components(37);
    REQUIRE(c37.size() == 2);
    CHECK(c37[0].kind == ComponentKind::Cusp);
    CHECK(c37[0].form == Form{1, 0, -37});
    CHECK(c37[1].kind == ComponentKind::NonCusp);
    CHECK(c37[1].cls == make_class(Form{3, 74, 444}));
    CHECK(c37[1].doubled);

    auto c79 = components(79);
    REQUIRE(c79.size() == 2);
    CHECK(c79[1].cls == make_class(Form{7, 316, 3555}));
    CHECK_FALSE(c79[1].doubled);

    for (long N : primes(5, 199))
        CHECK_MESSAGE(static_cast<long>(components(N).size()) == oracle::kappa(N), "N = " << N);
}

TEST_CASE("cusp component lengths")
{
    for (auto [N, rows] : {std::pair{5L, 1UL}, {13L, 2UL}, {37L, 2UL}, {79L, 1UL}, {163L, 6UL}})
        CHECK(cusp_half_length(n_cycle(N, Form{1, 0, -N})) == rows);
}
