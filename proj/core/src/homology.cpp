#include "realocus/homology.hpp"

#include <algorithm>

namespace realocus {

namespace {

using RatMat = std::vector<RatVector>;

/* Reduced row echelon form in place; returns the pivot columns. */
std::vector<std::size_t> rref(RatMat& m, std::size_t cols)
{
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[row]);
        Rat inv = 1 / m[row][col];
        for (std::size_t j = col; j < cols; ++j)
            m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0)
                continue;
            Rat f = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] -= f * m[row][j];
        }
        piv.push_back(col);
        ++row;
    }
    m.resize(row);
    return piv;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& piv, std::size_t cols)
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0, k = 0; j < cols; ++j) {
        if (k < piv.size() && piv[k] == j)
            ++k;
        else
            out.push_back(j);
    }
    return out;
}

} // namespace

MSymbol msymbol(long N, const Int& c, const Int& d)
{
    Int cm = mod(c, N), dm = mod(d, N);
    if (dm != 0)
        return {centered(cm * inv_mod(dm, N), N), 1};
    if (cm == 0)
        throw input_error("(0:0) is not a point of P^1");
    return {1, 0};
}

std::string str(const MSymbol& s) { return "(" + str(s.c) + ":" + str(s.d) + ")"; }

std::string str(const std::vector<MSymbol>& sum)
{
    if (sum.empty())
        return "0";
    std::string out;
    for (const MSymbol& s : sum) {
        if (!out.empty())
            out += " + ";
        out += str(s);
    }
    return out;
}

std::vector<MSymbol> component_class(const NCycle& c, std::size_t rows)
{
    std::vector<MSymbol> out;
    for (std::size_t i = 0; i < std::min(rows, c.size()); ++i) {
        const CodeMatrix& cm = c.matrices[i];
        if (cm.half_turn)
            continue;
        Int tr = abs(cm.m.trace());
        if (tr <= 2)
            continue;
        out.push_back(msymbol(c.N, -cm.m.d, 1));
    }
    return out;
}

std::vector<MSymbol> component_class(const Component& comp)
{
    return component_class(comp.cycle, comp.rows);
}

long genus_x0(long N)
{
    if (!is_prime(N))
        throw input_error("genus_x0 needs a prime level");
    long nu2 = 1 + kronecker(Int(-4), Int(N));
    long nu3 = 1 + kronecker(Int(-3), Int(N));
    /* 12 g = 12 + (N + 1) - 3 nu2 - 4 nu3 - 6 * (two cusps) */
    long twelve_g = (N + 1) - 3 * nu2 - 4 * nu3;
    if (twelve_g % 12 != 0)
        throw invariant_error("genus formula not integral");
    return twelve_g / 12;
}

ManinBasis::ManinBasis(long N) : N_(N)
{
    if (!is_prime(N))
        throw input_error("ManinBasis needs a prime level");
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    for (long c = 0; c < N; ++c)
        gens_.push_back({centered(c, N), 1});
    gens_.push_back({1, 0});

    RatMat rel;
    auto unit = [&](std::initializer_list<MSymbol> xs) {
        RatVector r(n, Rat(0));
        for (const MSymbol& x : xs)
            r[index(x)] += 1;
        return r;
    };
    for (const MSymbol& x : gens_) {
        const Int &c = x.c, &d = x.d;
        rel.push_back(unit({x, msymbol(N, -d, c)}));
        rel.push_back(unit({x, msymbol(N, c + d, -c), msymbol(N, d, -c - d)}));
    }
    auto piv = rref(rel, n);
    free_ = complement(piv, n);

    image_.assign(n, RatVector(free_.size(), Rat(0)));
    for (std::size_t j = 0; j < free_.size(); ++j)
        image_[free_[j]][j] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k)
        for (std::size_t j = 0; j < free_.size(); ++j)
            image_[piv[k]][j] = -rel[k][free_[j]];

    RatMat bd(2, RatVector(free_.size(), Rat(0)));
    for (std::size_t j = 0; j < free_.size(); ++j) {
        auto [inf, zero] = boundary(image_[free_[j]]);
        bd[0][j] = inf;
        bd[1][j] = zero;
    }
    auto bpiv = rref(bd, free_.size());
    kernel_cols_ = complement(bpiv, free_.size());
    for (std::size_t col : kernel_cols_) {
        RatVector v(free_.size(), Rat(0));
        v[col] = 1;
        for (std::size_t k = 0; k < bpiv.size(); ++k)
            v[bpiv[k]] = -bd[k][col];
        kernel_.push_back(std::move(v));
    }
}

std::size_t ManinBasis::index(const MSymbol& s) const
{
    if (s.d == 0)
        return static_cast<std::size_t>(N_);
    return mod(s.c, N_).get_ui();
}

RatVector ManinBasis::quotient_image(const MSymbol& s) const { return image_[index(s)]; }

std::pair<Rat, Rat> ManinBasis::boundary(const RatVector& v) const
{
    /* delta (c:d) = [cusp of c] - [cusp of d], cusp oo when N | x, else 0 */
    Rat inf = 0, zero = 0;
    for (std::size_t j = 0; j < free_.size(); ++j) {
        if (v[j] == 0)
            continue;
        const MSymbol& g = gens_[free_[j]];
        bool c_inf = mod(g.c, N_) == 0, d_inf = mod(g.d, N_) == 0;
        (c_inf ? inf : zero) += v[j];
        (d_inf ? inf : zero) -= v[j];
    }
    return {inf, zero};
}

RatVector ManinBasis::coordinates(const RatVector& v) const
{
    auto [inf, zero] = boundary(v);
    if (inf != 0 || zero != 0)
        throw invariant_error("coordinates of a chain with nonzero boundary");
    RatVector out;
    for (std::size_t col : kernel_cols_)
        out.push_back(v[col]);
    return out;
}

RatVector class_vector(const std::vector<MSymbol>& symbols, const ManinBasis& basis)
{
    RatVector v(basis.quotient_dimension(), Rat(0));
    for (const MSymbol& s : symbols) {
        /* {i*oo, r} for Gamma^0(N) is S{0, -1/r}, the Gamma_0(N) symbol (-r:1) */
        RatVector w = basis.quotient_image(msymbol(basis.level(), -s.c, s.d));
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] += w[j];
    }
    return basis.coordinates(v);
}

std::size_t rank_of(std::vector<RatVector> rows)
{
    if (rows.empty())
        return 0;
    std::size_t cols = rows.front().size();
    return rref(rows, cols).size();
}

long component_rank(long N)
{
    ManinBasis basis(N);
    std::vector<RatVector> rows;
    for (const Component& comp : components(N))
        rows.push_back(class_vector(component_class(comp), basis));
    return static_cast<long>(rank_of(std::move(rows)));
}

MCycle m_cycle(long N, const Form& q, const Int& s)
{
    Int D = disc(q);
    if (D <= 0 || is_square(D) || q.a == 0)
        throw input_error("m_cycle needs an indefinite form with A != 0: " + str(q));
    if (mod(s, N) == 0)
        throw input_error("m_cycle: s must be a unit mod N");
    int a = q.a > 0 ? 1 : -1;
    Int sp = centered(-inv_mod(s, N), N);
    HPoint top = tip_point(q);
    Form qs = translate(q, -s);
    MCycle out{};
    out.s = s;
    out.s_prime = sp;
    if (s == sp && qs.a + qs.c == 0) {
        /* S^{a/2} = (1, a; -a, 1)/sqrt2 */
        IntMatrix H{1, a, -a, 1};
        Form h = act_unscaled(H, qs);
        if (mod(h.a, 2) != 0 || mod(h.b, 2) != 0 || mod(h.c, 2) != 0)
            throw invariant_error("m_cycle: half turn image not integral");
        Form img = translate(Form{h.a / 2, h.b / 2, h.c / 2}, s);
        HPoint is{Rat(s), Rat(1)};
        HPoint top2 = tip_point(img);
        out.kind = 1;
        out.m = IntMatrix::T(s) * H * IntMatrix::T(-s);
        out.image = img;
        out.segments = {{std::nullopt, top}, {top, is}, {is, top2}, {top2, std::nullopt}};
        return out;
    }
    IntMatrix M = IntMatrix::T(sp) * IntMatrix::S() * IntMatrix::T(-s);
    Form img = act(M, q);
    /* |tau|^2 = 1 - s^2 + 2 s x on the circle |tau - s| = 1 */
    Int den = 2 * q.a * s + q.b;
    if (den == 0)
        throw input_error("m_cycle: geodesic is concentric with the circle about s");
    Rat x = frac(-(q.a * (1 - s * s) + q.c), den);
    Rat y2 = 1 - (x - Rat(s)) * (x - Rat(s));
    if (y2 <= 0)
        throw input_error("m_cycle: geodesic misses the circle |tau - s| = 1");
    HPoint P{x, y2};
    HPoint MP = moebius(M, P);
    HPoint top2 = tip_point(img);
    out.kind = 2;
    out.m = M;
    out.image = img;
    out.p = P;
    out.mp = MP;
    out.segments = {{std::nullopt, top}, {top, P}, {MP, top2}, {top2, std::nullopt}};
    out.homologous = {msymbol(N, s, 1)};
    return out;
}

} // namespace realocus
