#pragma once

#include <string>
#include <vector>

#include "grpd/bibundle.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/matrix.hpp"
#include "grpd/module.hpp"
#include "grpd/report.hpp"
#include "grpd/representation.hpp"

namespace grpd {

/// A C(G)-C(H) bimodule. The right action is written as matrices acting on
/// column vectors, so right_act(h' h'') = right_act(h'') right_act(h').
struct Bimodule {
  GroupoidPtr left;
  GroupoidPtr right;
  std::size_t dim = 0;
  std::vector<Matrix> left_act;
  std::vector<Matrix> right_act;
  std::string name;
};

/// Violations: "left action law", "right action law", "left nondegeneracy",
/// "right nondegeneracy", "commutation".
ValidationReport validate_bimodule(const Bimodule& b);

/// C(P): basis delta_p in point order, delta_g . delta_p = delta_{g.p} and
/// delta_p . delta_h = delta_{p.h} where defined.
Bimodule bimodule_of(const PrincipalBibundle& p);

/// V (x)_{C(H)} W as an explicit quotient of V (x) W (index i * dim W + j).
/// `projection` (dim x N) is in reduced echelon form; `section` (N x dim)
/// is the unit-vector section at its pivot columns, so projection * section
/// = I. `relations` spans the balancing subspace. Outer actions descend to
/// `left_act` (over V's left groupoid) and `right_act` (over W's right
/// groupoid, empty when W is a plain module).
struct BalancedTensor {
  std::size_t dim = 0;
  std::size_t unreduced_dim = 0;
  Matrix projection;
  Matrix section;
  Matrix relations;
  std::vector<Matrix> left_act;
  std::vector<Matrix> right_act;
};

/// Throws PreconditionError when the middle groupoids differ.
BalancedTensor balanced_tensor(const Bimodule& v, const Bimodule& w);
BalancedTensor balanced_tensor(const Bimodule& v, const CModule& w);

/// Omega_{P,Q}: C(P) (x)_{C(H)} C(Q) -> C(P (x)_H Q).
struct Omega {
  BalancedTensor source;
  Bimodule target;
  /// delta_p (x) delta_q -> delta_[p,q] on the unreduced space (zero off the
  /// fibered product).
  Matrix full;
  /// full * source.section
  Matrix map;
};

Omega omega(const PrincipalBibundle& p, const PrincipalBibundle& q);
/// Well-defined on the quotient, invertible, intertwines both actions.
CheckReport check_omega(const PrincipalBibundle& p, const PrincipalBibundle& q);
/// a * Omega_{PQ,R} (Omega_{P,Q} (x) 1) = Omega_{P,QR} (1 (x) Omega_{Q,R}) on
/// C(P) (x) C(Q) (x) C(R), with a the associator's permutation matrix.
CheckReport check_omega_associativity(const PrincipalBibundle& p, const PrincipalBibundle& q,
                                      const PrincipalBibundle& r);
/// C(r_P) Omega_{P,H} and C(l_P) Omega_{G,P} equal the action maps of C(H)
/// and C(G) on C(P).
CheckReport check_omega_units(const PrincipalBibundle& p);

/// Permutation matrix of an equivariant map on delta functions.
Matrix point_map_matrix(const EquivariantMap& f);

/// Mod(P)(M) = C(P) (x)_{C(H)} M with its left C(G)-action. Requires M of
/// finite type and constant rank and checks the same of the result; throws
/// PreconditionError otherwise.
CModule mod_functor(const PrincipalBibundle& p, const CModule& m);
ModuleMorphism mod_functor_mor(const PrincipalBibundle& p, const ModuleMorphism& f);

/// The comparison Mod(P)(Mod(Q)(M)) -> Mod(P (x) Q)(M) induced by
/// Omega_{P,Q} (x) id.
ModuleMorphism mod_composition(const PrincipalBibundle& p, const PrincipalBibundle& q, const CModule& m);
CheckReport check_mod_composition(const PrincipalBibundle& p, const PrincipalBibundle& q, const CModule& m);

/// sigma_P(E): Mod(P)(Gamma E) -> Gamma(Rep(P) E), delta_p (x) u -> the
/// section supported at pi(p) with value rho_E(division(p_{pi p}, p)) u(phi p).
ModuleMorphism sigma(const PrincipalBibundle& p, const Representation& e);
/// Well-defined on the quotient, intertwining, invertible.
CheckReport check_sigma(const PrincipalBibundle& p, const Representation& e);

/// For trivial bundles: Mod(P(psi))(Gamma E) -> Gamma(psi* E),
/// delta_(x,h) (x) u -> the section at x with value rho_E(h) u(s h).
ModuleMorphism functor_sigma(const GroupoidFunctor& psi, const Representation& e);

/// sigma(P,F) Mod(P)(Gamma phi) = Gamma(Rep(P) phi) sigma(P,E).
CheckReport check_natural_square(const PrincipalBibundle& p, const RepMorphism& phi);

}  // namespace grpd
