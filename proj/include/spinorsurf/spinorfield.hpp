#pragma once
// Spinor fields on charts, expressed in the spin frame lifted from (e1, e2, N).
// In this gauge the normal acts by E3, so the splitting S = S+ (+) S- is simply
// the first / second component.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

#include "spinorsurf/charts.hpp"
#include "spinorsurf/spinalgebra.hpp"

namespace spinorsurf {

enum class Provenance { Restricted, Star, Manufactured, Derived };

struct SpinorFieldGrid {
    Field<Spinord> values;
    // id of the GeometryField whose frame the components refer to
    std::uint64_t gauge = 0;
    // sign picked up when crossing the identified edge of a periodic direction
    double seam_u = 1.0;
    double seam_v = 1.0;
    Provenance provenance = Provenance::Manufactured;

    int size() const { return static_cast<int>(values.size()); }
};

// Per-node symmetric 2x2 matrices in the (e1, e2) frame; entry (j, k) is the
// e_k-component of the endomorphism applied to e_j.
using EndoField = Field<Eigen::Matrix2d>;

// Restriction of the constant ambient spinor to the surface, phi = U* Phi.
SpinorFieldGrid restrict_parallel(const Spinord& ambient, const GeometryField& geom, int base = 0);

// Field built from a closed-form evaluator of the components at (u, v).
SpinorFieldGrid manufactured_field(const GeometryField& geom, const std::function<Spinord(double, double)>& components);

// phi* = phi+ - i phi- (pointwise, normal = e3 in the surface gauge).
SpinorFieldGrid star(const SpinorFieldGrid& phi);
SpinorFieldGrid apply_alpha(const SpinorFieldGrid& phi);
SpinorFieldGrid plus_part(const SpinorFieldGrid& phi);
SpinorFieldGrid minus_part(const SpinorFieldGrid& phi);

// Spin-connection derivative along e_j (j = 0 or 1).
SpinorFieldGrid covariant_derivative(const SpinorFieldGrid& phi, const GeometryField& geom, int j);

// D(phi) = e1 . nabla_e1 phi + e2 . nabla_e2 phi
SpinorFieldGrid dirac(const SpinorFieldGrid& phi, const GeometryField& geom);

// Rough Laplacian nabla* nabla, positive sign convention.
SpinorFieldGrid spinor_laplacian(const SpinorFieldGrid& phi, const GeometryField& geom);

// Pointwise |nabla_X phi - (1/2) II(X) . N . phi| maximised over X in {e1, e2}:
// vanishes for the restriction of a parallel spinor.
ScalarField restriction_residual(const SpinorFieldGrid& phi, const GeometryField& geom);

ScalarField pointwise_norm(const SpinorFieldGrid& phi);
// |phi - H phi| style residuals.
ScalarField difference_norm(const SpinorFieldGrid& a, const SpinorFieldGrid& b);
ScalarField dirac_eigen_residual(const SpinorFieldGrid& phi, const ScalarField& eigenvalue, const GeometryField& geom);

struct EndoExtraction {
    EndoField endo;
    ScalarField asymmetry;         // |E_12 - E_21|
    ScalarField trace_residual;    // |Tr E + H|
    ScalarField det_residual;      // |det E - G/4|
    ScalarField twistor_residual;  // max_j |nabla_ej phi - E(e_j) . phi|
};

// E_jk = Re(nabla_ej phi, e_k . phi) / |phi|^2. Throws ZeroLength when
// min |phi| < 1e-8 max |phi|.
EndoExtraction extract_E(const SpinorFieldGrid& phi, const GeometryField& geom);

// Twistor residual of phi against a given endomorphism field.
ScalarField twistor_residual(const SpinorFieldGrid& phi, const EndoField& endo, const GeometryField& geom);

struct FormsF {
    EndoField plus;   // F+(e_j, e_k) = Re(nabla_ej phi+, e_k . phi-)
    EndoField minus;  // F-(e_j, e_k) = Re(nabla_ej phi-, e_k . phi+)
    ScalarField asymmetry_plus, asymmetry_minus;
    ScalarField trace_plus, trace_minus;  // |Tr F+- + H |phi-+|^2|
    ScalarField relation;                 // | |phi+|^2 F+ - |phi-|^2 F- |
};
FormsF forms_F(const SpinorFieldGrid& phi, const GeometryField& geom);

// |A(e1, e2)| with A(X,Y) = nabla_X(E Y) - nabla_Y(E X) - E[X,Y].
ScalarField codazzi_residual(const EndoField& endo, const GeometryField& geom);

// Sign s in {+1, -1} minimising max |2E - s II| and the attained maximum.
struct SecondFormMatch {
    double sign = 1.0;
    ScalarField residual;
};
SecondFormMatch match_second_form(const EndoField& endo, const GeometryField& geom);

struct LaplacianIdentities {
    ScalarField u;               // L+ - L-
    ScalarField u_residual;      // Delta u - 4 (H^2 - G/2) u
    ScalarField plus_residual;   // Delta L+ - [2(H^2 - G/2)(L+ - L-) + 2 Re(grad H . phi-, phi+)]
    ScalarField minus_residual;  // same for L-
    ScalarField dirac_square;    // |D^2 phi - Delta phi - (G/2) phi|
};
LaplacianIdentities laplacian_identities(const SpinorFieldGrid& phi, const GeometryField& geom);

// <N, a3> = <i N . phi, phi> / |phi|^2, pointwise.
ScalarField normal_projection(const SpinorFieldGrid& phi);

}  // namespace spinorsurf
