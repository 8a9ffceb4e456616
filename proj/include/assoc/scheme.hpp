#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace assoc {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the floating spectral path cannot certify a result within the
// 1e-9 contract.
struct tolerance_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Scheme;

// Construction provenance, used to pick exact spectral routes.
struct KernelInfo {
  long n = 0;
  long v = 0;
};

struct TranslationInfo {
  std::vector<long> orders;  // cyclic factor orders; |X| = prod(orders)
  // S : X -> I by point index, where point x has label of the group element
  // and S(x) = R(0, x). The scheme relation is R(x, y) = S(y - x).
  std::vector<int> smap;
};

struct ExtensionInfo {
  std::shared_ptr<const Scheme> base;
  int s = 1;
  // Relation i of the extension is the S_s-orbit of base relation tuples;
  // rep is the canonical representative (sorted by the extension ordering).
  std::vector<std::vector<int>> orbit_rep;
  std::map<std::vector<int>, int> orbit_of;  // sorted tuple -> relation id
};

using SchemeStructure =
    std::variant<std::monostate, KernelInfo, TranslationInfo, ExtensionInfo>;

struct SchemeSpec {
  std::vector<std::string> points;
  std::vector<std::string> relations;
  std::string identity_label = "id";
  std::function<int(int, int)> rel;
  SchemeStructure structure = std::monostate{};
  std::optional<bool> commutative;  // known from the construction, if set
  bool materialize = true;          // dense relation table when |X| <= 1024
};

// Intersection numbers p_{ij}^k of a scheme, indexed [k][i][j].
class IntersectionTensor {
 public:
  IntersectionTensor(int r, std::vector<long> data)
      : r_(r), t_(std::move(data)) {}
  long at(int k, int i, int j) const { return t_[(k * r_ + i) * r_ + j]; }
  int rank() const { return r_; }

 private:
  int r_;
  std::vector<long> t_;
};

template <class S>
struct EigData;

// A finite association scheme (X, R, I). Immutable after construction; the
// spectral and intersection-number caches are filled lazily and are
// race-tolerant.
class Scheme : public std::enable_shared_from_this<Scheme> {
 public:
  explicit Scheme(SchemeSpec spec);

  int num_points() const { return static_cast<int>(points_.size()); }
  int num_relations() const { return static_cast<int>(rels_.size()); }
  const std::vector<std::string>& point_labels() const { return points_; }
  const std::vector<std::string>& relation_labels() const { return rels_; }
  int identity() const { return i0_; }

  int rel(int x, int y) const {
    return dense_.empty() ? fn_(x, y)
                          : dense_[static_cast<size_t>(x) * points_.size() + y];
  }
  bool materialized() const { return !dense_.empty(); }

  int transpose(int i) const { return transpose_[i]; }
  long valency(int i) const { return valency_[i]; }
  bool symmetric() const;  // R(x,y) == R(y,x), i.e. all i* == i

  int point_index(const std::string& label) const;
  int relation_index(const std::string& label) const;
  std::optional<int> find_point(const std::string& label) const;
  std::optional<int> find_relation(const std::string& label) const;

  // A pair (x, y) with R(x, y) = i, taken from row 0.
  std::pair<int, int> representative_pair(int i) const;

  const IntersectionTensor& intersection_numbers() const;
  bool is_commutative() const;

  const SchemeStructure& structure() const { return structure_; }

  // spectral caches, managed by spectral_data()
  mutable std::mutex cache_mu;
  mutable std::shared_ptr<const EigData<class Cyc>> exact_spectral_cache;
  mutable std::shared_ptr<const EigData<std::complex<double>>>
      float_spectral_cache;

 private:
  std::vector<std::string> points_, rels_;
  int i0_;
  std::function<int(int, int)> fn_;
  std::vector<int32_t> dense_;
  std::vector<int> transpose_;
  std::vector<long> valency_;
  std::vector<int> rep_pair_y_;  // representative (0, y) per relation
  SchemeStructure structure_;
  std::unordered_map<std::string, int> point_idx_, rel_idx_;

  mutable std::shared_ptr<const IntersectionTensor> tensor_;
  mutable std::optional<bool> commutative_;
};

using SchemePtr = std::shared_ptr<const Scheme>;

// Same underlying scheme: pointer identity or full structural equality.
bool same_scheme(const SchemePtr& a, const SchemePtr& b);
bool structurally_equal(const Scheme& a, const Scheme& b);

struct AxiomViolation {
  std::string axiom;    // "surjectivity" | "identity" | "transpose" |
                        // "intersection-numbers"
  std::string message;  // human-readable, names the witness
  std::vector<std::string> witness;  // point labels involved
};

struct SchemeCheck {
  SchemePtr scheme;  // set iff valid
  std::optional<AxiomViolation> violation;
  bool ok() const { return scheme != nullptr; }
};

// Verifies all four association-scheme axioms exhaustively and returns the
// scheme, or the first violation found (deterministic scan order).
SchemeCheck verify_scheme(const std::vector<std::string>& points,
                          const std::vector<std::string>& relations,
                          const std::string& identity_label,
                          const std::function<int(int, int)>& rel);

// Convenience overload re-verifying an already constructed scheme.
SchemeCheck verify_scheme(const SchemePtr& s);

}  // namespace assoc
