#pragma once

#include "realocus/classgroup.hpp"
#include "realocus/pell.hpp"

#include <optional>
#include <string>
#include <vector>

namespace realocus {

enum class CaseTag { Case1, Case2, Case3, Case4, Case5, CuspZero, CuspInf };

std::string tag_label(CaseTag t); // "1".."5", "0", "∞"
std::string tag_ascii(CaseTag t); // "1".."5", "0", "inf"

/* Integral matrix of a code step. With half_turn set the group element is m/sqrt2. */
struct CodeMatrix {
    IntMatrix m;
    bool half_turn = false;
};

struct NCycle {
    long N;
    std::vector<Form> forms;
    std::vector<CodeMatrix> matrices;
    std::vector<CaseTag> tags;
    std::size_t size() const { return forms.size(); }
};

struct Step {
    Form next;
    CodeMatrix m;
    CaseTag tag;
};

/* delta(Q): the t with I(T^t gamma, sigma-bar) = 1; tie = the crossing is at a vertex. */
struct Delta {
    Int t;
    bool tie;
};
std::optional<Delta> delta(const Form& q);

/* Element of {T^k : k in C(N)} u {S} with rep * g in Gamma^0(N). */
IntMatrix coset_rep(long N, const IntMatrix& g);

/* Region of F_N met by gamma_q: T^k F, or the flap S F. */
struct Witness {
    bool flap;
    Int k;
};
std::optional<Witness> fundamental_domain_meets(long N, const Form& q);

std::pair<Form, IntMatrix> n_reduce_with(long N, const Form& q);
Form n_reduce(long N, const Form& q);

/* Cases 1-5; throws input_error near a cusp. */
Step s_matrix(long N, const Form& q);
/* One step of the cycle, including the cusp normalisations. */
Step n_step(long N, const Form& q);
NCycle n_cycle(long N, const Form& q, std::size_t max_steps = 1000000);
std::vector<CodeMatrix> n_code(const NCycle& c);

struct Arc {
    Form on; // geodesic carrying the arc
    HPoint from, to;
};

struct Surgery {
    HPoint b, b1, b2; // b, b', b''
};

struct RegularPath {
    std::vector<Arc> arcs;
    std::optional<Surgery> surgery;
    IntMatrix level_automorph; // M_{N,Q} from the primitive automorph
};

/* Order-2 elliptic points of Gamma^0(N) on gamma_q strictly between from and to. */
std::vector<HPoint> elliptic_points_between(long N, const Form& q, const HPoint& from,
                                            const HPoint& to);
RegularPath regular_path(long N, const Form& q, const HPoint& tau0);
HPoint antipode(long N, const Form& q, const HPoint& tau0);

/* Floating arcs of a cycle clipped to F_N, for plotting. */
struct PlotArc {
    std::size_t row;
    Form form;
    CaseTag tag;
    double x0, y0, x1, y1;
};
std::vector<PlotArc> cycle_arcs(const NCycle& c, std::size_t rows);

enum class ComponentKind { Cusp, NonCusp };

struct Component {
    long N;
    ComponentKind kind;
    FormClass cls;
    Form form; // starting form of the cycle
    NCycle cycle;
    std::size_t rows; // rows of the cycle traced by the component
    bool halfcycle;   // non-cusp component of case A (N = 1 mod 4)
    bool doubled;     // its symbol sum is twice the component class
    std::vector<PlotArc> arcs;
};

/* Row index of the cusp half-cycle end: the tip is (N + sqrt(-N))/2 mod T^N. */
std::size_t cusp_half_length(const NCycle& c);
Component cusp_component(long N);
std::vector<Component> components(long N);

} // namespace realocus
