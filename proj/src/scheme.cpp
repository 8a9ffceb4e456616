#include "assoc/scheme.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace assoc {

Scheme::Scheme(SchemeSpec spec)
    : points_(std::move(spec.points)),
      rels_(std::move(spec.relations)),
      fn_(std::move(spec.rel)),
      structure_(std::move(spec.structure)),
      commutative_(spec.commutative) {
  if (points_.empty()) throw input_error("scheme must have at least one point");
  if (rels_.empty()) throw input_error("scheme must have at least one relation");
  const int n = num_points();
  const int r = num_relations();

  for (int x = 0; x < n; ++x) {
    if (!point_idx_.emplace(points_[x], x).second)
      throw input_error("duplicate point label: " + points_[x]);
  }
  for (int i = 0; i < r; ++i) {
    if (!rel_idx_.emplace(rels_[i], i).second)
      throw input_error("duplicate relation label: " + rels_[i]);
  }
  auto it = rel_idx_.find(spec.identity_label);
  if (it == rel_idx_.end())
    throw input_error("identity relation label not found: " +
                      spec.identity_label);
  i0_ = it->second;

  if (spec.materialize && n <= 1024) {
    dense_.resize(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int i = fn_(x, y);
        if (i < 0 || i >= r) throw input_error("relation map out of range");
        dense_[static_cast<size_t>(x) * n + y] = i;
      }
  }

  // Row 0 carries every relation of a valid scheme; use it for valencies,
  // transposes and representative pairs. verify_scheme() re-checks this
  // against the axioms.
  valency_.assign(r, 0);
  transpose_.assign(r, -1);
  rep_pair_y_.assign(r, -1);
  for (int y = 0; y < n; ++y) {
    int i = rel(0, y);
    if (i < 0 || i >= r) throw input_error("relation map out of range");
    ++valency_[i];
    if (rep_pair_y_[i] < 0) {
      rep_pair_y_[i] = y;
      transpose_[i] = rel(y, 0);
    }
  }
  for (int i = 0; i < r; ++i)
    if (rep_pair_y_[i] < 0)
      throw input_error("relation " + rels_[i] +
                        " does not occur in row 0; map not surjective");
}

bool Scheme::symmetric() const {
  for (int i = 0; i < num_relations(); ++i)
    if (transpose_[i] != i) return false;
  return true;
}

int Scheme::point_index(const std::string& label) const {
  auto it = point_idx_.find(label);
  if (it == point_idx_.end()) throw input_error("unknown point: " + label);
  return it->second;
}

int Scheme::relation_index(const std::string& label) const {
  auto it = rel_idx_.find(label);
  if (it == rel_idx_.end()) throw input_error("unknown relation: " + label);
  return it->second;
}

std::optional<int> Scheme::find_point(const std::string& label) const {
  auto it = point_idx_.find(label);
  if (it == point_idx_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Scheme::find_relation(const std::string& label) const {
  auto it = rel_idx_.find(label);
  if (it == rel_idx_.end()) return std::nullopt;
  return it->second;
}

std::pair<int, int> Scheme::representative_pair(int i) const {
  return {0, rep_pair_y_[i]};
}

const IntersectionTensor& Scheme::intersection_numbers() const {
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    if (tensor_) return *tensor_;
  }
  const int n = num_points();
  const int r = num_relations();
  std::vector<long> t(static_cast<size_t>(r) * r * r, 0);
  for (int k = 0; k < r; ++k) {
    auto [x, y] = representative_pair(k);
    for (int z = 0; z < n; ++z)
      ++t[(static_cast<size_t>(k) * r + rel(x, z)) * r + rel(z, y)];
  }
  auto built = std::make_shared<IntersectionTensor>(r, std::move(t));
  std::lock_guard<std::mutex> lock(cache_mu);
  if (!tensor_) tensor_ = std::move(built);
  return *tensor_;
}

bool Scheme::is_commutative() const {
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    if (commutative_) return *commutative_;
  }
  const IntersectionTensor& t = intersection_numbers();
  const int r = num_relations();
  bool comm = true;
  for (int k = 0; k < r && comm; ++k)
    for (int i = 0; i < r && comm; ++i)
      for (int j = i + 1; j < r; ++j)
        if (t.at(k, i, j) != t.at(k, j, i)) {
          comm = false;
          break;
        }
  std::lock_guard<std::mutex> lock(cache_mu);
  commutative_ = comm;
  return comm;
}

bool structurally_equal(const Scheme& a, const Scheme& b) {
  if (a.point_labels() != b.point_labels()) return false;
  if (a.relation_labels() != b.relation_labels()) return false;
  if (a.identity() != b.identity()) return false;
  const int n = a.num_points();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a.rel(x, y) != b.rel(x, y)) return false;
  return true;
}

bool same_scheme(const SchemePtr& a, const SchemePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->num_points() != b->num_points() ||
      a->num_relations() != b->num_relations())
    return false;
  return structurally_equal(*a, *b);
}

namespace {

std::string triple(const std::string& a, const std::string& b,
                   const std::string& c) {
  return "(" + a + ", " + b + ", " + c + ")";
}

}  // namespace

SchemeCheck verify_scheme(const std::vector<std::string>& points,
                          const std::vector<std::string>& relations,
                          const std::string& identity_label,
                          const std::function<int(int, int)>& rel) {
  SchemeCheck out;
  const int n = static_cast<int>(points.size());
  const int r = static_cast<int>(relations.size());
  auto fail = [&](std::string axiom, std::string msg,
                  std::vector<std::string> wit) {
    out.violation = AxiomViolation{std::move(axiom), std::move(msg),
                                   std::move(wit)};
    return out;
  };
  if (n == 0) throw input_error("scheme must have at least one point");
  int i0 = -1;
  for (int i = 0; i < r; ++i)
    if (relations[i] == identity_label) i0 = i;
  if (i0 < 0) throw input_error("identity label not among relations");

  // surjectivity
  std::vector<char> seen(r, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int i = rel(x, y);
      if (i < 0 || i >= r)
        throw input_error("relation map value out of range at (" + points[x] +
                          ", " + points[y] + ")");
      seen[i] = 1;
    }
  for (int i = 0; i < r; ++i)
    if (!seen[i])
      return fail("surjectivity",
                  "relation " + relations[i] + " never occurs", {});

  // identity relation
  for (int x = 0; x < n; ++x)
    if (rel(x, x) != i0)
      return fail("identity",
                  "R(" + points[x] + ", " + points[x] + ") != " +
                      identity_label,
                  {points[x], points[x]});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && rel(x, y) == i0)
        return fail("identity",
                    "R(" + points[x] + ", " + points[y] + ") = " +
                        identity_label + " off the diagonal",
                    {points[x], points[y]});

  // transpose closure: R(y,x) must be a function of R(x,y)
  std::vector<int> tr(r, -1);
  std::vector<std::pair<int, int>> tr_wit(r);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int i = rel(x, y);
      int it = rel(y, x);
      if (tr[i] < 0) {
        tr[i] = it;
        tr_wit[i] = {x, y};
      } else if (tr[i] != it) {
        return fail(
            "transpose",
            "pairs (" + points[tr_wit[i].first] + ", " +
                points[tr_wit[i].second] + ") and (" + points[x] + ", " +
                points[y] + ") share relation " + relations[i] +
                " but have different transposed relations",
            {points[x], points[y]});
      }
    }

  // intersection numbers independent of the base pair
  std::vector<std::vector<long>> ref(r);
  std::vector<std::pair<int, int>> ref_wit(r);
  std::vector<long> counts(static_cast<size_t>(r) * r);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int k = rel(x, y);
      std::fill(counts.begin(), counts.end(), 0);
      for (int z = 0; z < n; ++z)
        ++counts[static_cast<size_t>(rel(x, z)) * r + rel(z, y)];
      if (ref[k].empty()) {
        ref[k] = counts;
        ref_wit[k] = {x, y};
      } else if (ref[k] != counts) {
        // locate a differing (i, j) and a witness z for the message
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            if (ref[k][static_cast<size_t>(i) * r + j] !=
                counts[static_cast<size_t>(i) * r + j]) {
              std::ostringstream msg;
              msg << "p_{" << relations[i] << "," << relations[j] << "}^{"
                  << relations[k] << "} is "
                  << ref[k][static_cast<size_t>(i) * r + j] << " at base pair "
                  << triple(points[ref_wit[k].first], points[ref_wit[k].second],
                            "-")
                  << " but " << counts[static_cast<size_t>(i) * r + j]
                  << " at (" << points[x] << ", " << points[y] << ")";
              return fail("intersection-numbers", msg.str(),
                          {points[x], points[y]});
            }
      }
    }

  SchemeSpec spec;
  spec.points = points;
  spec.relations = relations;
  spec.identity_label = identity_label;
  spec.rel = rel;
  out.scheme = std::make_shared<Scheme>(std::move(spec));
  return out;
}

SchemeCheck verify_scheme(const SchemePtr& s) {
  SchemePtr keep = s;  // keep alive inside the relation closure
  auto check =
      verify_scheme(s->point_labels(), s->relation_labels(),
                    s->relation_labels()[s->identity()],
                    [keep](int x, int y) { return keep->rel(x, y); });
  // preserve the original object (it carries structure info and caches)
  if (check.ok()) check.scheme = s;
  return check;
}

}  // namespace assoc
