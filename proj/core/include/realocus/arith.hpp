#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace realocus {

using Int = mpz_class;
using Rat = mpq_class;

/* Bad caller input. The CLI maps this to exit code 2. */
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/* Broken internal invariant. Exit code 1. */
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

Int isqrt(const Int& n);
bool is_square(const Int& n);
Int floor_div(const Int& a, const Int& b);
Int mod(const Int& a, const Int& n);       // in [0, n)
Int centered(const Int& a, long n);        // in C(n) = [-(n-1)/2, (n-1)/2]
Int inv_mod(const Int& a, long n);         // centered inverse, throws if none
Int floor_rat(const Rat& q);
Rat frac(const Int& n, const Int& d); // canonical n/d
Int gcd3(const Int& a, const Int& b, const Int& c);
int sgn(const Int& x);
int sgn(const Rat& x);
int kronecker(const Int& a, const Int& n);
bool is_prime(long n);
bool is_fundamental(const Int& d);
std::string str(const Int& x);
std::string str(const Rat& x);

/* x + y*sqrt(d), d >= 0. Comparisons are exact. */
struct QuadNum {
    Rat x, y;
    Int d;

    QuadNum() : x(0), y(0), d(0) {}
    QuadNum(Rat x_, Rat y_, Int d_);
    static QuadNum rational(const Rat& r, const Int& d) { return {r, 0, d}; }

    QuadNum conj() const { return {x, -y, d}; }
    Rat norm() const { return x * x - y * y * Rat(d); }
    int sign() const;
    double to_double() const;
    bool is_rational() const { return y == 0; }

    friend QuadNum operator+(const QuadNum& a, const QuadNum& b);
    friend QuadNum operator-(const QuadNum& a, const QuadNum& b);
    friend QuadNum operator*(const QuadNum& a, const QuadNum& b);
    friend QuadNum operator/(const QuadNum& a, const QuadNum& b);
    QuadNum operator-() const { return {-x, -y, d}; }
    friend bool operator==(const QuadNum& a, const QuadNum& b);
    friend std::strong_ordering operator<=>(const QuadNum& a, const QuadNum& b);
};

/* sign of p + q*sqrt(d) */
int sign_sqrt(const Rat& p, const Rat& q, const Int& d);

struct IntMatrix {
    Int a, b, c, d;

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    IntMatrix adj() const { return {d, -b, -c, a}; }
    IntMatrix operator-() const { return {-a, -b, -c, -d}; }
    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    friend bool operator==(const IntMatrix& x, const IntMatrix& y) = default;

    static IntMatrix identity() { return {1, 0, 0, 1}; }
    static IntMatrix T(const Int& k) { return {1, k, 0, 1}; }
    static IntMatrix S() { return {0, -1, 1, 0}; }
};

IntMatrix power(IntMatrix m, unsigned long e);
bool in_gamma_upper(const IntMatrix& m, long N); // Gamma^0(N), det 1
std::string str(const IntMatrix& m);

/* Entries in Q(sqrt d), all over the same d. */
struct QuadMatrix {
    QuadNum a, b, c, d;
    QuadNum det() const { return a * d - b * c; }
    friend QuadMatrix operator*(const QuadMatrix& x, const QuadMatrix& y);
    friend bool operator==(const QuadMatrix& x, const QuadMatrix& y) = default;
    static QuadMatrix from(const IntMatrix& m, const Int& d);
};

/* S^{+-1/2} = (1/sqrt2)(1, +-1; -+1, 1), with sqrt 2 represented over d = 2. */
QuadMatrix s_half(int a);

/* A point of H with rational real part and rational squared imaginary part. */
struct HPoint {
    Rat re;
    Rat im2;
    double imag() const;
    friend bool operator==(const HPoint& x, const HPoint& y) = default;
};

/* Moebius action of a rational matrix with positive determinant. */
HPoint moebius(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const HPoint& z);
HPoint moebius(const IntMatrix& m, const HPoint& z);
std::string str(const HPoint& z);

} // namespace realocus
