#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/matrix.hpp"
#include "grpd/report.hpp"

namespace grpd {

/// A representation of constant rank k: one k x k matrix per arrow, acting
/// from the fiber over src(g) to the fiber over tgt(g). Construction only
/// checks shapes; `validate_rep` checks functoriality.
class Representation {
 public:
  Representation(GroupoidPtr groupoid, std::size_t rank, std::vector<Matrix> rho, std::string name = {});

  /// rho(g) = I_k for every arrow.
  static Representation trivial(const GroupoidPtr& g, std::size_t rank, std::string name = {});

  [[nodiscard]] const GroupoidPtr& groupoid() const { return groupoid_; }
  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] const Matrix& rho(Arrow g) const { return rho_[g]; }
  [[nodiscard]] const std::vector<Matrix>& rhos() const { return rho_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] Representation renamed(std::string name) const;

  friend bool operator==(const Representation& a, const Representation& b);

 private:
  GroupoidPtr groupoid_;
  std::size_t rank_;
  std::vector<Matrix> rho_;
  std::string name_;
};

/// Empty iff rho(1_x) = I, rho(g'g'') = rho(g')rho(g'') and
/// rho(g^-1) = rho(g)^-1. Violations: "identity", "functoriality", "inverse".
ValidationReport validate_rep(const Representation& e);

/// An equivariant map E -> F: one rank(F) x rank(E) matrix per object.
class RepMorphism {
 public:
  RepMorphism(Representation source, Representation target, std::vector<Matrix> phi);

  [[nodiscard]] const Representation& source() const { return source_; }
  [[nodiscard]] const Representation& target() const { return target_; }
  [[nodiscard]] const Matrix& at(Obj x) const { return phi_[x]; }
  [[nodiscard]] const std::vector<Matrix>& components() const { return phi_; }

  friend bool operator==(const RepMorphism& a, const RepMorphism& b);

 private:
  Representation source_;
  Representation target_;
  std::vector<Matrix> phi_;
};

/// Empty iff phi(tgt g) rho_E(g) = rho_F(g) phi(src g) for all arrows
/// ("equivariance").
ValidationReport validate_rep_morphism(const RepMorphism& phi);

RepMorphism identity_morphism(const Representation& e);
RepMorphism zero_morphism(const Representation& e, const Representation& f);
/// `after` o `before`.
RepMorphism compose(const RepMorphism& after, const RepMorphism& before);
bool is_isomorphism(const RepMorphism& phi);
/// Throws SingularMatrixError when some component is not invertible.
RepMorphism inverse_morphism(const RepMorphism& phi);
/// sum_i coeffs[i] * basis[i]; all morphisms must share source and target.
RepMorphism linear_combination(const std::vector<RepMorphism>& basis, const std::vector<Scalar>& coeffs);

Representation direct_sum(const Representation& e, const Representation& f);
Representation tensor_rep(const Representation& e, const Representation& f);
/// rho*(g) = (rho(g)^-1)^T.
Representation dual_rep(const Representation& e);

/// Basis of Hom(E, F), computed by exact elimination of the equivariance
/// system over all arrows.
std::vector<RepMorphism> intertwiner_space(const Representation& e, const Representation& f);

/// True when ranks agree and traces agree on every arrow with src = tgt.
bool characters_agree(const Representation& e, const Representation& f);

/// An explicit invertible intertwiner E -> F, or nullopt when none exists.
/// Candidates sum_i c_i T_i over the intertwiner basis are scanned on the
/// grid {0..n}^m (n = total dimension) in order of increasing coefficient
/// sum, so the result is deterministic.
std::optional<RepMorphism> find_isomorphism(const Representation& e, const Representation& f);

}  // namespace grpd
