#include "realocus/arith.hpp"

#include <cmath>

namespace realocus {

Int isqrt(const Int& n)
{
    if (n < 0)
        throw input_error("isqrt of negative number");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int mod(const Int& a, const Int& n)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int centered(const Int& a, long n)
{
    Int r = mod(a, n);
    if (2 * r > n - 1)
        r -= n;
    return r;
}

Int inv_mod(const Int& a, long n)
{
    Int r, m = n;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw invariant_error("no inverse of " + str(a) + " mod " + std::to_string(n));
    return centered(r, n);
}

Int floor_rat(const Rat& q)
{
    return floor_div(q.get_num(), q.get_den());
}

Rat frac(const Int& n, const Int& d)
{
    if (d == 0)
        throw invariant_error("frac: zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

Int gcd3(const Int& a, const Int& b, const Int& c)
{
    Int g = gcd(a, b);
    return gcd(g, c);
}

int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

int kronecker(const Int& a, const Int& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

bool is_fundamental(const Int& d)
{
    if (d == 0 || d == 1)
        return false;
    Int r = mod(d, 4);
    auto squarefree = [](Int m) {
        if (m < 0)
            m = -m;
        for (Int p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0)
                return false;
        return true;
    };
    if (r == 1)
        return squarefree(d);
    if (r != 0)
        return false;
    Int m = d / 4;
    Int m4 = mod(m, 4);
    return (m4 == 2 || m4 == 3) && squarefree(m);
}

std::string str(const Int& x) { return x.get_str(); }
std::string str(const Rat& x) { return x.get_str(); }

int sign_sqrt(const Rat& p, const Rat& q, const Int& d)
{
    int sp = sgn(p), sq = d == 0 ? 0 : sgn(q);
    if (sq == 0)
        return sp;
    if (sp == 0)
        return sq;
    if (sp == sq)
        return sp;
    /* opposite signs: compare p^2 with q^2 d */
    Rat diff = p * p - q * q * Rat(d);
    return sgn(diff) * sp;
}

QuadNum::QuadNum(Rat x_, Rat y_, Int d_) : x(std::move(x_)), y(std::move(y_)), d(std::move(d_))
{
    if (d < 0)
        throw input_error("QuadNum needs d >= 0");
}

int QuadNum::sign() const { return sign_sqrt(x, y, d); }

double QuadNum::to_double() const
{
    return x.get_d() + y.get_d() * std::sqrt(d.get_d());
}

static Int common_d(const QuadNum& a, const QuadNum& b)
{
    if (a.y == 0)
        return b.d;
    if (b.y == 0 || a.d == b.d)
        return a.d;
    throw invariant_error("QuadNum arithmetic across different fields");
}

QuadNum operator+(const QuadNum& a, const QuadNum& b)
{
    return {a.x + b.x, a.y + b.y, common_d(a, b)};
}

QuadNum operator-(const QuadNum& a, const QuadNum& b)
{
    return {a.x - b.x, a.y - b.y, common_d(a, b)};
}

QuadNum operator*(const QuadNum& a, const QuadNum& b)
{
    Int d = common_d(a, b);
    return {a.x * b.x + a.y * b.y * Rat(d), a.x * b.y + a.y * b.x, d};
}

QuadNum operator/(const QuadNum& a, const QuadNum& b)
{
    Int d = common_d(a, b);
    QuadNum bb{b.x, b.y, d};
    Rat n = bb.norm();
    if (n == 0)
        throw invariant_error("QuadNum division by zero");
    QuadNum num = a * bb.conj();
    return {num.x / n, num.y / n, d};
}

bool operator==(const QuadNum& a, const QuadNum& b)
{
    return (a - b).sign() == 0;
}

std::strong_ordering operator<=>(const QuadNum& a, const QuadNum& b)
{
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

IntMatrix power(IntMatrix m, unsigned long e)
{
    IntMatrix r = IntMatrix::identity();
    while (e) {
        if (e & 1)
            r = r * m;
        m = m * m;
        e >>= 1;
    }
    return r;
}

bool in_gamma_upper(const IntMatrix& m, long N)
{
    return m.det() == 1 && mod(m.b, N) == 0;
}

std::string str(const IntMatrix& m)
{
    return "(" + str(m.a) + ", " + str(m.b) + "; " + str(m.c) + ", " + str(m.d) + ")";
}

QuadMatrix operator*(const QuadMatrix& x, const QuadMatrix& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

QuadMatrix QuadMatrix::from(const IntMatrix& m, const Int& d)
{
    return {QuadNum::rational(m.a, d), QuadNum::rational(m.b, d),
            QuadNum::rational(m.c, d), QuadNum::rational(m.d, d)};
}

QuadMatrix s_half(int a)
{
    Rat h(1, 2);
    QuadNum p{0, h, 2}, m{0, -h, 2};
    /* 1/sqrt2 = sqrt2/2 */
    if (a >= 0)
        return {p, p, m, p};
    return {p, m, p, p};
}

double HPoint::imag() const { return std::sqrt(im2.get_d()); }

HPoint moebius(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const HPoint& z)
{
    Rat det = a * d - b * c;
    if (det <= 0)
        throw input_error("moebius needs positive determinant");
    Rat u = c * z.re + d;
    Rat den = u * u + c * c * z.im2;
    Rat re = ((a * z.re + b) * u + a * c * z.im2) / den;
    Rat im2 = det * det * z.im2 / (den * den);
    return {re, im2};
}

HPoint moebius(const IntMatrix& m, const HPoint& z)
{
    return moebius(Rat(m.a), Rat(m.b), Rat(m.c), Rat(m.d), z);
}

std::string str(const HPoint& z)
{
    return str(z.re) + "+i*sqrt(" + str(z.im2) + ")";
}

} // namespace realocus
