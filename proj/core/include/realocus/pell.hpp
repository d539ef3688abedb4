#pragma once

#include "realocus/qform.hpp"

#include <optional>

namespace realocus {

struct PellSolution {
    Int x, y;
    int kind; // +1 or -1
};

/* x + y sqrt D with x, y in (1/2)Z */
struct FundamentalUnit {
    QuadNum eps;
    int norm;
};

PellSolution pell_fundamental(const Int& D);
std::optional<PellSolution> negative_pell(const Int& D);
bool legendre_criterion(long p);
FundamentalUnit fundamental_unit(const Int& D);

IntMatrix automorph(const Form& q);
/* The QuadMatrix (1/sqrt D)(Dy'-Bx', -2Cx'; 2Ax', Dy'+Bx') for eta = x' + y' sqrt D. */
QuadMatrix half_automorph(const Form& q, const QuadNum& eta);
/* Square root of automorph(q); eta is the least odd power of eps squaring to lambda_Q. */
QuadMatrix automorph_sqrt(const Form& q);
/* Automorph from eps^2 (or eps when eps has norm +1), the generator of the stabiliser. */
IntMatrix primitive_automorph(const Form& q);
QuadMatrix primitive_automorph_sqrt(const Form& q);

std::pair<IntMatrix, unsigned long> level_automorph(long N, const Form& q);

/* The same Moebius map as a rational matrix with positive determinant. */
struct RatMatrix {
    Rat a, b, c, d;
};
RatMatrix projective(const QuadMatrix& m);
HPoint moebius(const RatMatrix& m, const HPoint& z);

} // namespace realocus
