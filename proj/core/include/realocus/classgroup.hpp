#pragma once

#include "realocus/qform.hpp"

#include <vector>

namespace realocus {

/* Proper classes of positive definite forms for D < 0; wide classes for D > 0,
   where Q and [-a, b, -c] are identified. */
struct FormClass {
    Form rep; // canonical reduced representative
    Int D;
    friend bool operator==(const FormClass& x, const FormClass& y) { return x.rep == y.rep; }
};

bool is_discriminant(const Int& D);

/* 0 < b < sqrt D, sqrt D - b < 2|a| < sqrt D + b */
bool is_classically_reduced(const Form& q);
/* One step of the reduction operator; it permutes the reduced forms of a class. */
Form rho_step(const Form& q);
Form reduce_indefinite(const Form& q);
std::vector<Form> reduced_cycle(const Form& q);

FormClass make_class(const Form& q);
Form principal_form(const Int& D);
FormClass principal(const Int& D);
FormClass inverse(const FormClass& c);
FormClass compose(const FormClass& x, const FormClass& y);
std::vector<FormClass> all_classes(const Int& D);
long class_number(const Int& D);
std::vector<FormClass> ambiguous_classes(const Int& D);
long kappa(long N);

struct HeegnerContext {
    long N;
    Int D;
    Int r; // 0 <= r < 2N
    HeegnerContext(long N_, Int D_, Int r_);
};

struct HeegnerForm {
    Form form; // N | C, B = r mod 2N
    FormClass cls;
};

std::vector<HeegnerForm> heegner_forms(const HeegnerContext& ctx);
Form frobenius_form(const HeegnerContext& ctx);
int genus_character(const Int& D0, const HeegnerContext& ctx);
/* chi_{D0} evaluated on the class of a positive definite form */
int genus_character_of(const Int& D0, const Form& p);

} // namespace realocus
