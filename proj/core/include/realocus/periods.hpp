#pragma once

#include "realocus/homology.hpp"

#include <array>
#include <complex>
#include <istream>
#include <string>
#include <vector>

namespace realocus {

struct Curve {
    std::string label;
    std::array<long, 5> a; // a1 a2 a3 a4 a6
    long conductor = 0;    // leading digits of the label
};

struct CurveInvariants {
    Int b2, b4, b6, b8, c4, c6, disc;
};

CurveInvariants invariants(const Curve& e);
/* Conductor of a curve with prime conductor and multiplicative reduction; throws otherwise. */
long prime_conductor(const Curve& e);

/* "label a1 a2 a3 a4 a6" per line, '#' starts a comment. Each curve is validated. */
std::vector<Curve> parse_curves(std::istream& in);
std::vector<Curve> load_curves(const std::string& path);
const Curve& find_curve(const std::vector<Curve>& curves, const std::string& label);

/* p + 1 - #E(F_p), counting the singular point at bad p. */
long ap(const Curve& e, long p);
/* a_0 .. a_nmax of the newform, a_0 = 0. */
std::vector<long> an_table(const Curve& e, std::size_t nmax);

/* Least positive real period of the Neron lattice. */
double real_period(const Curve& e);

using cplx = std::complex<double>;

class Newform {
public:
    Newform(const Curve& e, double tol = 1e-14);

    long level() const { return N_; }
    const Curve& curve() const { return curve_; }
    int fricke_sign() const { return eps_; }

    /* f(tau) */
    cplx value(cplx tau) const;
    /* sum a_n/n (q(t1)^n - q(t0)^n) = 2 pi i int_{t0}^{t1} f */
    cplx integral(cplx t0, cplx t1) const;
    /* 2 pi i int_{tau}^{g tau} f for g in Gamma_0(N), at the base point of largest height. */
    cplx period_of_matrix(const IntMatrix& g) const;
    /* 2 pi i int over {i*oo, r} for the Gamma^0(N) symbol (r:1). */
    cplx integrate_msymbol(const MSymbol& s) const;
    /* {i*oo, 0} split at i h, the lower half moved up by the Fricke involution. */
    cplx integrate_zero_split(double height) const;

private:
    void ensure_terms(double im) const;

    Curve curve_;
    long N_;
    double tol_;
    mutable std::vector<long> an_;
    int eps_ = 0;
};

/* Gamma^0(N) -> Gamma_0(N), tau -> tau / N. */
IntMatrix to_gamma0(long N, const IntMatrix& m);

struct PeriodResult {
    double omega_e, omega_eq, imag_residue;
    long alpha;
    double residual;
};

/* Omega_{E,Q} from the component symbols; a doubled class is halved. */
PeriodResult alpha(const Newform& f, const std::vector<MSymbol>& symbols, bool doubled,
                   double rel_tol = 1e-5);
PeriodResult alpha(const Newform& f, const Component& comp, double rel_tol = 1e-5);

} // namespace realocus
