#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/matrix.hpp"
#include "grpd/report.hpp"
#include "grpd/scalar.hpp"

namespace grpd {

/// A function on the arrows of a finite groupoid; coefficient k belongs to
/// arrow k in canonical order.
class AlgebraElement {
 public:
  AlgebraElement(GroupoidPtr groupoid, std::vector<Scalar> coeffs);

  static AlgebraElement zero(const GroupoidPtr& g);
  /// The delta function of a single arrow.
  static AlgebraElement delta(const GroupoidPtr& g, Arrow a);

  [[nodiscard]] const GroupoidPtr& groupoid() const { return groupoid_; }
  [[nodiscard]] const std::vector<Scalar>& coeffs() const { return coeffs_; }
  [[nodiscard]] const Scalar& operator[](Arrow a) const { return coeffs_[a]; }
  [[nodiscard]] bool is_zero() const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Scalar& s, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  GroupoidPtr groupoid_;
  std::vector<Scalar> coeffs_;
};

/// The convolution algebra C(G): (ab)(g) = sum over g = g'g'' of a(g')b(g'').
class ConvolutionAlgebra {
 public:
  explicit ConvolutionAlgebra(GroupoidPtr groupoid);

  [[nodiscard]] const GroupoidPtr& groupoid() const { return groupoid_; }
  [[nodiscard]] std::size_t dimension() const { return groupoid_->arrow_count(); }

  /// Pairs (g', g'') with g'g'' = g.
  [[nodiscard]] const std::vector<std::pair<Arrow, Arrow>>& factorizations(Arrow g) const {
    return factorizations_[g];
  }

  /// Throws PreconditionError when the operands live over another groupoid.
  [[nodiscard]] AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b) const;

  [[nodiscard]] AlgebraElement unit() const;

  /// sum_x f(x) delta_{1_x}; f is indexed by object.
  [[nodiscard]] AlgebraElement embed_base(const std::vector<Scalar>& f) const;

  [[nodiscard]] bool is_central(const AlgebraElement& a) const;

 private:
  void require_parent(const AlgebraElement& a) const;

  GroupoidPtr groupoid_;
  std::vector<std::vector<std::pair<Arrow, Arrow>>> factorizations_;
};

AlgebraElement algebra_unit(const GroupoidPtr& g);
AlgebraElement embed_base(const std::vector<Scalar>& f, const GroupoidPtr& g);

struct MatrixAlgebraCheck {
  bool pass = true;
  std::size_t identities_checked = 0;
  std::optional<std::string> first_failure;
};

/// Verifies delta_(i,j) * delta_(k,l) = [j = k] delta_(i,l) over the pair
/// groupoid on n objects, i.e. that C(pair_n) has the structure constants of
/// the n x n matrix units.
MatrixAlgebraCheck check_matrix_algebra_iso(std::size_t n);

/// Assigns each arrow of a connected groupoid with trivial isotropy the
/// matrix unit E_{tgt, src}. Throws PreconditionError otherwise.
std::vector<Matrix> matrix_unit_model(const FiniteGroupoid& g);

/// Checks that delta_g -> images[g] extends to an algebra isomorphism
/// C(G) -> M_n: the images are linearly independent and span M_n, are
/// multiplicative on all basis pairs and send the unit to the identity.
CheckReport check_matrix_model(const ConvolutionAlgebra& algebra, const std::vector<Matrix>& images);

}  // namespace grpd
