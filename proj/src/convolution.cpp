#include "grpd/convolution.hpp"

#include "grpd/error.hpp"

namespace grpd {

AlgebraElement::AlgebraElement(GroupoidPtr groupoid, std::vector<Scalar> coeffs)
    : groupoid_(std::move(groupoid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != groupoid_->arrow_count()) {
    throw DimensionError("algebra element needs one coefficient per arrow");
  }
}

AlgebraElement AlgebraElement::zero(const GroupoidPtr& g) {
  return {g, std::vector<Scalar>(g->arrow_count())};
}

AlgebraElement AlgebraElement::delta(const GroupoidPtr& g, Arrow a) {
  std::vector<Scalar> c(g->arrow_count());
  c.at(a) = 1;
  return {g, std::move(c)};
}

bool AlgebraElement::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  if (!same_groupoid(a.groupoid_, b.groupoid_)) throw PreconditionError("sum of elements over different groupoids");
  std::vector<Scalar> c = a.coeffs_;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.coeffs_[k];
  return {a.groupoid_, std::move(c)};
}

AlgebraElement operator*(const Scalar& s, const AlgebraElement& a) {
  std::vector<Scalar> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return {a.groupoid_, std::move(c)};
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return same_groupoid(a.groupoid_, b.groupoid_) && a.coeffs_ == b.coeffs_;
}

ConvolutionAlgebra::ConvolutionAlgebra(GroupoidPtr groupoid) : groupoid_(std::move(groupoid)) {
  const auto& G = *groupoid_;
  factorizations_.resize(G.arrow_count());
  for (Arrow a = 0; a < G.arrow_count(); ++a) {
    for (Arrow b = 0; b < G.arrow_count(); ++b) {
      if (auto ab = G.compose(a, b)) factorizations_[*ab].emplace_back(a, b);
    }
  }
}

void ConvolutionAlgebra::require_parent(const AlgebraElement& a) const {
  if (!same_groupoid(a.groupoid(), groupoid_)) {
    throw PreconditionError("algebra element over " + a.groupoid()->name() + " used in C(" + groupoid_->name() + ")");
  }
}

AlgebraElement ConvolutionAlgebra::convolve(const AlgebraElement& a, const AlgebraElement& b) const {
  require_parent(a);
  require_parent(b);
  std::vector<Scalar> c(dimension());
  for (Arrow g = 0; g < dimension(); ++g) {
    for (const auto& [x, y] : factorizations_[g]) {
      if (a[x].is_zero() || b[y].is_zero()) continue;
      c[g] += a[x] * b[y];
    }
  }
  return {groupoid_, std::move(c)};
}

AlgebraElement ConvolutionAlgebra::unit() const {
  return embed_base(std::vector<Scalar>(groupoid_->object_count(), Scalar(1)));
}

AlgebraElement ConvolutionAlgebra::embed_base(const std::vector<Scalar>& f) const {
  if (f.size() != groupoid_->object_count()) throw DimensionError("embed_base needs one value per object");
  std::vector<Scalar> c(dimension());
  for (Obj x = 0; x < f.size(); ++x) c[groupoid_->identity(x)] = f[x];
  return {groupoid_, std::move(c)};
}

bool ConvolutionAlgebra::is_central(const AlgebraElement& a) const {
  for (Arrow g = 0; g < dimension(); ++g) {
    auto d = AlgebraElement::delta(groupoid_, g);
    if (!(convolve(a, d) == convolve(d, a))) return false;
  }
  return true;
}

AlgebraElement algebra_unit(const GroupoidPtr& g) { return ConvolutionAlgebra(g).unit(); }

AlgebraElement embed_base(const std::vector<Scalar>& f, const GroupoidPtr& g) {
  return ConvolutionAlgebra(g).embed_base(f);
}

MatrixAlgebraCheck check_matrix_algebra_iso(std::size_t n) {
  MatrixAlgebraCheck result;
  const auto objects = numbered_objects(n);
  auto G = pair_groupoid(objects, "pair" + std::to_string(n));
  ConvolutionAlgebra algebra(G);
  auto unit = [&](std::size_t i, std::size_t j) {
    return G->arrow("(" + objects[i] + "," + objects[j] + ")");
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          auto product = algebra.convolve(AlgebraElement::delta(G, unit(i, j)), AlgebraElement::delta(G, unit(k, l)));
          auto expected = j == k ? AlgebraElement::delta(G, unit(i, l)) : AlgebraElement::zero(G);
          ++result.identities_checked;
          if (!(product == expected) && result.pass) {
            result.pass = false;
            result.first_failure = "E" + objects[i] + objects[j] + " * E" + objects[k] + objects[l];
          }
        }
      }
    }
  }
  return result;
}

std::vector<Matrix> matrix_unit_model(const FiniteGroupoid& g) {
  const std::size_t n = g.object_count();
  if (orbit_partition(g).size() != 1) throw PreconditionError("matrix unit model needs a connected groupoid");
  if (g.arrow_count() != n * n) throw PreconditionError("matrix unit model needs trivial isotropy");
  std::vector<Matrix> images;
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    Matrix m(n, n);
    m(g.tgt(a), g.src(a)) = 1;
    images.push_back(std::move(m));
  }
  return images;
}

CheckReport check_matrix_model(const ConvolutionAlgebra& algebra, const std::vector<Matrix>& images) {
  CheckReport report;
  const auto& G = algebra.groupoid();
  if (images.size() != algebra.dimension() || images.empty()) {
    report.add("image count", false, "need one image per arrow");
    return report;
  }
  const std::size_t n = images.front().rows();
  // Flatten each image into a column; bijectivity onto M_n means n^2 = |G| and full rank.
  std::vector<Matrix> cols;
  for (const auto& m : images) {
    if (m.rows() != n || m.cols() != n) {
      report.add("image shape", false, "images must all be n x n");
      return report;
    }
    cols.emplace_back(n * n, 1, m.entries());
  }
  const bool bijective = n * n == images.size() && rank(hstack(cols)) == n * n;
  report.add("linear bijection onto M_" + std::to_string(n), bijective);

  auto image_of = [&](const AlgebraElement& a) {
    Matrix m(n, n);
    for (Arrow g = 0; g < algebra.dimension(); ++g) {
      if (!a[g].is_zero()) m = m + a[g] * images[g];
    }
    return m;
  };
  std::optional<std::string> witness;
  for (Arrow a = 0; a < algebra.dimension() && !witness; ++a) {
    for (Arrow b = 0; b < algebra.dimension() && !witness; ++b) {
      auto prod = algebra.convolve(AlgebraElement::delta(G, a), AlgebraElement::delta(G, b));
      if (!(image_of(prod) == images[a] * images[b])) witness = "(" + G->arrow_id(a) + ", " + G->arrow_id(b) + ")";
    }
  }
  report.add("multiplicative on basis pairs", !witness, witness);
  report.add("unit maps to identity", image_of(algebra.unit()).is_identity());
  return report;
}

}  // namespace grpd
