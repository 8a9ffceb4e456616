#include "assoc/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "assoc/multiset_util.hpp"
#include "assoc/spectral.hpp"

namespace assoc {

char digit_char(long d) {
  if (d < 10) return static_cast<char>('0' + d);
  if (d < 36) return static_cast<char>('a' + (d - 10));
  throw input_error("alphabet size > 36 not supported by digit labels");
}

long digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  throw input_error(std::string("invalid digit character: ") + c);
}

int GroupTable::inverse(int e) const {
  for (int f = 0; f < order(); ++f)
    if (times(e, f) == 0) return f;
  throw input_error("group table has no inverse for " + labels[e]);
}

bool GroupTable::is_abelian() const {
  for (int e = 0; e < order(); ++e)
    for (int f = e + 1; f < order(); ++f)
      if (times(e, f) != times(f, e)) return false;
  return true;
}

namespace {

long checked_product(const std::vector<long>& orders) {
  if (orders.empty()) throw input_error("group needs at least one factor");
  long n = 1;
  for (long o : orders) {
    if (o < 1) throw input_error("cyclic order must be positive");
    if (n > 4096 / o + 1 && n * o > 4096)
      throw input_error("group too large (limit 4096 elements)");
    n *= o;
  }
  return n;
}

std::vector<long> mixed_radix(long x, const std::vector<long>& orders) {
  std::vector<long> d(orders.size());
  for (size_t t = orders.size(); t-- > 0;) {
    d[t] = x % orders[t];
    x /= orders[t];
  }
  return d;
}

std::string tuple_label(const std::vector<long>& d) {
  std::ostringstream os;
  for (size_t t = 0; t < d.size(); ++t) os << (t ? "." : "") << d[t];
  return os.str();
}

}  // namespace

GroupTable GroupTable::cyclic_product(const std::vector<long>& orders) {
  long n = checked_product(orders);
  GroupTable g;
  g.labels.reserve(n);
  for (long x = 0; x < n; ++x) g.labels.push_back(tuple_label(mixed_radix(x, orders)));
  g.mul.resize(n * n);
  for (long x = 0; x < n; ++x) {
    auto dx = mixed_radix(x, orders);
    for (long y = 0; y < n; ++y) {
      auto dy = mixed_radix(y, orders);
      long z = 0;
      for (size_t t = 0; t < orders.size(); ++t)
        z = z * orders[t] + (dx[t] + dy[t]) % orders[t];
      g.mul[x * n + y] = static_cast<int>(z);
    }
  }
  return g;
}

SchemePtr thin_scheme(const GroupTable& g) {
  const int n = g.order();
  if (n == 0) throw input_error("empty group");
  std::vector<int> inv(n);
  for (int e = 0; e < n; ++e) inv[e] = g.inverse(e);

  SchemeSpec spec;
  spec.points = g.labels;
  spec.relations = g.labels;
  spec.relations[0] = "id";
  spec.identity_label = "id";
  auto mul = g.mul;
  spec.rel = [inv, mul, n](int x, int y) { return mul[inv[x] * n + y]; };
  spec.commutative = g.is_abelian();
  return std::make_shared<Scheme>(std::move(spec));
}

SchemePtr thin_abelian(const std::vector<long>& orders) {
  long n = checked_product(orders);
  TranslationSpec ts;
  ts.orders = orders;
  ts.smap.resize(n);
  std::iota(ts.smap.begin(), ts.smap.end(), 0);
  ts.relations.reserve(n);
  for (long x = 0; x < n; ++x)
    ts.relations.push_back(x == 0 ? "id" : tuple_label(mixed_radix(x, orders)));
  ts.identity_label = "id";
  return translation_scheme(ts);
}

SchemePtr translation_scheme(const TranslationSpec& ts) {
  long n = checked_product(ts.orders);
  if (static_cast<long>(ts.smap.size()) != n)
    throw input_error("S map must assign a relation to every group element");
  const int r = static_cast<int>(ts.relations.size());
  int i0 = -1;
  for (int i = 0; i < r; ++i)
    if (ts.relations[i] == ts.identity_label) i0 = i;
  if (i0 < 0) throw input_error("identity label not among relations");
  for (long x = 0; x < n; ++x) {
    if (ts.smap[x] < 0 || ts.smap[x] >= r)
      throw input_error("S map value out of range");
    if ((ts.smap[x] == i0) != (x == 0))
      throw input_error("S must send exactly the zero element to the identity");
  }

  // negation on mixed-radix indices
  std::vector<long> orders = ts.orders;
  auto neg = [orders](long x) {
    auto d = mixed_radix(x, orders);
    long z = 0;
    for (size_t t = 0; t < orders.size(); ++t)
      z = z * orders[t] + (orders[t] - d[t]) % orders[t];
    return z;
  };
  // transpose closure: S(-x) must depend only on S(x)
  std::vector<int> tr(r, -1);
  for (long x = 0; x < n; ++x) {
    int i = ts.smap[x];
    int it = ts.smap[neg(x)];
    if (tr[i] < 0)
      tr[i] = it;
    else if (tr[i] != it)
      throw input_error("relation " + ts.relations[i] +
                        " is not transpose-closed under negation");
  }
  std::vector<char> used(r, 0);
  for (long x = 0; x < n; ++x) used[ts.smap[x]] = 1;
  for (int i = 0; i < r; ++i)
    if (!used[i])
      throw input_error("relation " + ts.relations[i] + " never occurs");

  SchemeSpec spec;
  spec.points.reserve(n);
  for (long x = 0; x < n; ++x)
    spec.points.push_back(tuple_label(mixed_radix(x, orders)));
  spec.relations = ts.relations;
  spec.identity_label = ts.identity_label;
  std::vector<int> smap = ts.smap;
  auto diff = [orders](long x, long y) {
    auto dx = mixed_radix(x, orders);
    auto dy = mixed_radix(y, orders);
    long z = 0;
    for (size_t t = 0; t < orders.size(); ++t)
      z = z * orders[t] + ((dy[t] - dx[t]) % orders[t] + orders[t]) % orders[t];
    return z;
  };
  spec.rel = [smap, diff](int x, int y) { return smap[diff(x, y)]; };
  spec.structure = TranslationInfo{orders, smap};
  spec.commutative = true;
  auto scheme = std::make_shared<Scheme>(std::move(spec));
  // Validates the algebra closure: the character eigenvalue classes must
  // biject with I (throws otherwise).
  spectral_data_exact(scheme);
  return scheme;
}

SchemePtr kernel_scheme(long n, long v) {
  if (n < 1) throw input_error("kernel scheme needs n >= 1");
  if (v < 2) throw input_error("kernel scheme needs v >= 2");
  long npoints = 1;
  for (long t = 0; t < n; ++t) {
    if (npoints * v > 4096)
      throw input_error("kernel scheme too large (limit 4096 points)");
    npoints *= v;
  }
  SchemeSpec spec;
  spec.points.reserve(npoints);
  for (long x = 0; x < npoints; ++x) {
    std::string lab(n, '0');
    long rest = x;
    for (long t = n - 1; t >= 0; --t) {
      lab[t] = digit_char(rest % v);
      rest /= v;
    }
    spec.points.push_back(lab);
  }
  for (long i = 1; i <= n; ++i) spec.relations.push_back(std::to_string(i));
  spec.relations.push_back("id");
  spec.identity_label = "id";

  std::vector<long> pow(n);
  pow[n - 1] = 1;
  for (long t = n - 2; t >= 0; --t) pow[t] = pow[t + 1] * v;
  spec.rel = [n, v, pow](int x, int y) {
    if (x == y) return static_cast<int>(n);  // "id"
    for (long t = 0; t < n; ++t) {
      long dx = (x / pow[t]) % v, dy = (y / pow[t]) % v;
      if (dx != dy) return static_cast<int>(t);
    }
    return static_cast<int>(n);
  };
  spec.structure = KernelInfo{n, v};
  spec.commutative = true;
  return std::make_shared<Scheme>(std::move(spec));
}

SchemePtr extend_scheme(const SchemePtr& base, int s) {
  if (s < 1) throw input_error("extension length must be >= 1");
  if (!base->is_commutative())
    throw input_error("extension requires a commutative base scheme");
  const long nb = base->num_points();
  long n = 1;
  for (int t = 0; t < s; ++t) {
    if (n * nb > 4096)
      throw input_error("extension too large (limit 4096 points)");
    n *= nb;
  }
  const int rb = base->num_relations();
  const int ib0 = base->identity();

  ExtensionInfo info;
  info.base = base;
  info.s = s;
  info.orbit_rep = multisets(s, rb);
  for (size_t o = 0; o < info.orbit_rep.size(); ++o)
    info.orbit_of.emplace(info.orbit_rep[o], static_cast<int>(o));

  SchemeSpec spec;
  spec.points.reserve(n);
  std::vector<long> pow(s);
  pow[s - 1] = 1;
  for (int t = s - 2; t >= 0; --t) pow[t] = pow[t + 1] * nb;
  for (long x = 0; x < n; ++x) {
    std::string lab;
    for (int t = 0; t < s; ++t) {
      if (t) lab += ",";
      lab += base->point_labels()[(x / pow[t]) % nb];
    }
    spec.points.push_back(lab);
  }

  // display order inside an orbit label: identity greatest, then by
  // descending base index
  auto display_rank = [ib0, rb](int i) { return i == ib0 ? rb : i; };
  std::string id_label;
  for (const auto& rep : info.orbit_rep) {
    bool all_id = std::all_of(rep.begin(), rep.end(),
                              [&](int i) { return i == ib0; });
    if (all_id) {
      spec.relations.push_back("id");
      continue;
    }
    std::vector<int> disp = rep;
    std::sort(disp.begin(), disp.end(), [&](int a, int b) {
      return display_rank(a) > display_rank(b);
    });
    std::string lab;
    for (int t = 0; t < s; ++t) {
      if (t) lab += ",";
      lab += base->relation_labels()[disp[t]];
    }
    spec.relations.push_back(lab);
  }
  spec.identity_label = "id";

  SchemePtr bp = base;
  auto orbit_of = info.orbit_of;
  spec.rel = [bp, orbit_of, pow, nb, s](int x, int y) {
    std::vector<int> tup(s);
    for (int t = 0; t < s; ++t)
      tup[t] = bp->rel((x / pow[t]) % nb, (y / pow[t]) % nb);
    std::sort(tup.begin(), tup.end());
    return orbit_of.at(tup);
  };
  spec.structure = std::move(info);
  spec.commutative = true;
  return std::make_shared<Scheme>(std::move(spec));
}

SchemePtr ordered_hamming(int s, long n, long v) {
  return extend_scheme(kernel_scheme(n, v), s);
}

SchemePtr schurian_scheme(int degree,
                          const std::vector<std::vector<int>>& generators) {
  if (degree < 1) throw input_error("degree must be positive");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree)
      throw input_error("generator degree mismatch");
    std::vector<char> seen(degree, 0);
    for (int x : g) {
      if (x < 0 || x >= degree || seen[x])
        throw input_error("generator is not a permutation");
      seen[x] = 1;
    }
  }

  // transitivity on points
  {
    std::vector<char> vis(degree, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& g : generators)
        if (!vis[g[x]]) {
          vis[g[x]] = 1;
          ++count;
          stack.push_back(g[x]);
        }
    }
    if (count != degree)
      throw input_error("schurian scheme requires a transitive action");
  }

  // orbitals: orbits of the diagonal action on X x X
  const long np = static_cast<long>(degree) * degree;
  std::vector<int> orbital(np, -1);
  int next = 0;
  int diag_orbital = -1;
  for (long start = 0; start < np; ++start) {
    if (orbital[start] >= 0) continue;
    int id = next++;
    if (start % (degree + 1) == 0) diag_orbital = id;  // includes (0,0)
    std::vector<long> stack{start};
    orbital[start] = id;
    while (!stack.empty()) {
      long p = stack.back();
      stack.pop_back();
      int x = static_cast<int>(p / degree), y = static_cast<int>(p % degree);
      for (const auto& g : generators) {
        long q = static_cast<long>(g[x]) * degree + g[y];
        if (orbital[q] < 0) {
          orbital[q] = id;
          stack.push_back(q);
        }
      }
    }
  }

  SchemeSpec spec;
  for (int x = 0; x < degree; ++x) spec.points.push_back(std::to_string(x + 1));
  for (int i = 0; i < next; ++i)
    spec.relations.push_back(i == diag_orbital ? "id"
                                               : "r" + std::to_string(i));
  spec.identity_label = "id";
  spec.rel = [orbital, degree](int x, int y) {
    return orbital[static_cast<long>(x) * degree + y];
  };
  return std::make_shared<Scheme>(std::move(spec));
}

long ShapeIndex::height() const {
  return std::accumulate(entries.begin(), entries.end(), 0L);
}

std::string ShapeIndex::label() const {
  if (std::all_of(entries.begin(), entries.end(), [](long e) { return !e; }))
    return "triv";
  std::string lab;
  for (size_t t = 0; t < entries.size(); ++t) {
    if (t) lab += ",";
    lab += entries[t] == 0 ? "triv" : std::to_string(entries[t]);
  }
  return lab;
}

ShapeIndex ShapeIndex::parse(const std::string& j_label, int s) {
  ShapeIndex sh;
  if (j_label == "triv") {
    sh.entries.assign(s, 0);
    return sh;
  }
  std::istringstream is(j_label);
  std::string part;
  while (std::getline(is, part, ',')) {
    if (part == "triv")
      sh.entries.push_back(0);
    else
      sh.entries.push_back(std::stol(part));
  }
  if (static_cast<int>(sh.entries.size()) != s)
    throw input_error("shape label has wrong arity: " + j_label);
  std::sort(sh.entries.rbegin(), sh.entries.rend());
  return sh;
}

std::vector<long> shape_heights(const std::vector<std::string>& j_labels,
                                int s) {
  std::vector<long> h;
  h.reserve(j_labels.size());
  for (const auto& lab : j_labels) h.push_back(ShapeIndex::parse(lab, s).height());
  return h;
}

}  // namespace assoc
