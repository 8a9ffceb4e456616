#include "assoc/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "assoc/multiset_util.hpp"

namespace assoc {

using CD = std::complex<double>;

template <class S>
int EigData<S>::j_index(const std::string& label) const {
  for (int j = 0; j < num_j(); ++j)
    if (j_labels[j] == label) return j;
  throw input_error("unknown eigenspace label: " + label);
}

template struct EigData<Cyc>;
template struct EigData<CD>;
template int EigData<Cyc>::j_index(const std::string&) const;
template int EigData<CD>::j_index(const std::string&) const;

// ---------------------------------------------------------------------------
// kernel scheme closed forms

Rat kernel_p(long n, long v, long i, long j) {
  if (i == 0) return rat_pow(v, -n);  // i = infinity
  if (j < i) return Rat(v - 1) * rat_pow(v, -i);
  if (j == i) return -rat_pow(v, -i);
  return Rat(0);
}

Rat kernel_q(long v, long j, long i) {
  if (j == 0) return Rat(1);
  if (i == 0 || j < i) return Rat(v - 1) * rat_pow(v, j - 1);
  if (j == i) return -rat_pow(v, j - 1);
  return Rat(0);
}

long kernel_m(long v, long j) {
  if (j == 0) return 1;
  long m = v - 1;
  for (long t = 1; t < j; ++t) m *= v;
  return m;
}

long kernel_k(long n, long v, long i) {
  if (i == 0) return 1;
  long k = v - 1;
  for (long t = i; t < n; ++t) k *= v;
  return k;
}

namespace {

// Relation index convention for kernel schemes: "1".."n" at 0..n-1, "id" at n.
// kernel_* functions take i = 0 for infinity, so translate via i_param(idx).
long kernel_i_param(long idx, long n) { return idx == n ? 0 : idx + 1; }

ExactEig closed_form_spectral(const Scheme& s, const KernelInfo& ki) {
  const long n = ki.n, v = ki.v;
  auto e = std::make_shared<EigData<Cyc>>();
  e->num_points = s.num_points();
  e->i_labels = s.relation_labels();
  e->j_labels.push_back("triv");
  for (long j = 1; j <= n; ++j) e->j_labels.push_back(std::to_string(j));
  e->p.resize(n + 1, n + 1);
  e->q.resize(n + 1, n + 1);
  for (long idx = 0; idx <= n; ++idx) {
    long i = kernel_i_param(idx, n);
    for (long j = 0; j <= n; ++j) {
      e->p(idx, j) = Cyc(kernel_p(n, v, i, j));
      e->q(j, idx) = Cyc(kernel_q(v, j, i));
    }
  }
  for (long j = 0; j <= n; ++j) e->m.push_back(kernel_m(v, j));
  for (long idx = 0; idx <= n; ++idx)
    e->k.push_back(kernel_k(n, v, kernel_i_param(idx, n)));
  return e;
}

// ---------------------------------------------------------------------------
// translation schemes: characters are the common eigenvectors

struct TransData {
  std::vector<long> orders;
  std::vector<int> smap;
};

TransData translation_data(const Scheme& s) {
  if (const auto* ti = std::get_if<TranslationInfo>(&s.structure()))
    return {ti->orders, ti->smap};
  if (const auto* ki = std::get_if<KernelInfo>(&s.structure())) {
    TransData td;
    td.orders.assign(ki->n, ki->v);
    td.smap.resize(s.num_points());
    // digits are big-endian; bot(x) = first nonzero digit position
    for (int x = 0; x < s.num_points(); ++x) {
      long rest = x;
      int bot = -1;
      std::vector<long> digits(ki->n);
      for (long t = ki->n - 1; t >= 0; --t) {
        digits[t] = rest % ki->v;
        rest /= ki->v;
      }
      for (long t = 0; t < ki->n; ++t)
        if (digits[t] != 0) {
          bot = static_cast<int>(t);
          break;
        }
      td.smap[x] = bot < 0 ? static_cast<int>(ki->n) : bot;
    }
    return td;
  }
  throw input_error("scheme has no translation structure");
}

struct CycVecLess {
  bool operator()(const std::vector<Cyc>& a, const std::vector<Cyc>& b) const {
    for (size_t t = 0; t < a.size(); ++t) {
      if (a[t] != b[t]) return Cyc::lex_less(a[t], b[t]);
    }
    return false;
  }
};

ExactEig characters_spectral(const Scheme& s) {
  TransData td = translation_data(s);
  const int n = s.num_points();
  const int r = s.num_relations();
  const size_t nf = td.orders.size();
  long big_n = 1;
  for (long o : td.orders) big_n = std::lcm(big_n, o);

  // mixed-radix digits of a point index (big-endian)
  auto digits_of = [&](long x) {
    std::vector<long> d(nf);
    for (size_t t = nf; t-- > 0;) {
      d[t] = x % td.orders[t];
      x /= td.orders[t];
    }
    return d;
  };
  std::vector<std::vector<long>> digits(n);
  for (int x = 0; x < n; ++x) digits[x] = digits_of(x);

  auto phase = [&](const std::vector<long>& tau, int a) {
    long ph = 0;
    for (size_t t = 0; t < nf; ++t)
      ph = (ph + tau[t] * digits[a][t] % big_n * (big_n / td.orders[t])) %
           big_n;
    return ph;
  };

  // eigenvalue vector of each character, grouped into classes
  std::map<std::vector<Cyc>, std::vector<int>, CycVecLess> classes;
  std::vector<std::vector<long>> taus(n);
  const Rat inv_n = rat(1, n);
  for (int c = 0; c < n; ++c) {
    taus[c] = digits_of(c);
    std::vector<std::vector<Rat>> cnt(r, std::vector<Rat>(big_n, Rat(0)));
    for (int a = 0; a < n; ++a) cnt[td.smap[a]][phase(taus[c], a)] += 1;
    std::vector<Cyc> ev(r);
    for (int i = 0; i < r; ++i)
      ev[i] = Cyc::power_sum(big_n, cnt[i]) * inv_n;
    classes[std::move(ev)].push_back(c);
  }
  if (static_cast<int>(classes.size()) != r)
    throw input_error(
        "character eigenvalue classes (" + std::to_string(classes.size()) +
        ") do not match the number of relations (" + std::to_string(r) +
        "); the partition is not a translation scheme");

  struct Cls {
    std::vector<Cyc> p_col;
    std::vector<int> members;
    long m;
    std::string label;
    bool trivial;
  };
  std::vector<Cls> cls;
  for (auto& [ev, members] : classes) {
    Cls c;
    c.p_col = ev;
    c.members = members;
    c.m = static_cast<long>(members.size());
    int rep = *std::min_element(members.begin(), members.end());
    c.trivial = rep == 0;
    std::ostringstream lab;
    for (size_t t = 0; t < nf; ++t) lab << (t ? "." : "") << taus[rep][t];
    c.label = c.trivial ? "triv" : lab.str();
    cls.push_back(std::move(c));
  }
  std::sort(cls.begin(), cls.end(), [](const Cls& a, const Cls& b) {
    if (a.trivial != b.trivial) return a.trivial;
    if (a.m != b.m) return a.m < b.m;
    for (size_t t = 0; t < a.p_col.size(); ++t)
      if (a.p_col[t] != b.p_col[t]) return Cyc::lex_less(a.p_col[t], b.p_col[t]);
    return false;
  });

  auto e = std::make_shared<EigData<Cyc>>();
  e->num_points = n;
  e->i_labels = s.relation_labels();
  e->p.resize(r, r);
  e->q.resize(r, r);
  for (int j = 0; j < r; ++j) {
    e->j_labels.push_back(cls[j].label);
    e->m.push_back(cls[j].m);
    for (int i = 0; i < r; ++i) e->p(i, j) = cls[j].p_col[i];
    // q_j(i) = sum over the class of xi(a_i) for a representative a_i in S_i
    for (int i = 0; i < r; ++i) {
      auto [x0, y0] = s.representative_pair(i);
      (void)x0;
      std::vector<Rat> cnt(big_n, Rat(0));
      for (int c : cls[j].members) cnt[phase(taus[c], y0)] += 1;
      e->q(j, i) = Cyc::power_sum(big_n, cnt);
    }
  }
  for (int i = 0; i < r; ++i) e->k.push_back(s.valency(i));
  return e;
}

// ---------------------------------------------------------------------------
// extension of length s: symmetrized tensor formulas

template <class S>
std::shared_ptr<EigData<S>> extension_spectral(const Scheme& ext,
                                               const ExtensionInfo& info,
                                               const EigData<S>& be) {
  const int s = info.s;
  const int jb = be.num_j();
  const int ri = static_cast<int>(info.orbit_rep.size());
  auto jsets = multisets(s, jb);
  const int rj = static_cast<int>(jsets.size());
  if (ri != rj)
    throw input_error("extension relation and eigenspace counts differ");

  auto e = std::make_shared<EigData<S>>();
  e->num_points = ext.num_points();
  e->i_labels = ext.relation_labels();
  e->p.resize(ri, rj);
  e->q.resize(rj, ri);
  for (int jbar = 0; jbar < rj; ++jbar) {
    const auto& jt = jsets[jbar];
    bool trivial = std::all_of(jt.begin(), jt.end(), [](int x) { return !x; });
    if (trivial) {
      e->j_labels.push_back("triv");
    } else {
      std::string lab;
      for (int t = s - 1; t >= 0; --t) {  // display descending
        if (!lab.empty()) lab += ",";
        lab += be.j_labels[jt[t]];
      }
      e->j_labels.push_back(lab);
    }
    long perms = 0;
    long prod_m = 1;
    for (int t : jt) prod_m *= be.m[t];
    for_each_perm(jt, [&](const std::vector<int>&) { ++perms; });
    e->m.push_back(perms * prod_m);

    for (int ibar = 0; ibar < ri; ++ibar) {
      const auto& it = info.orbit_rep[ibar];
      S acc(0);
      for_each_perm(jt, [&](const std::vector<int>& perm) {
        S prod(1);
        for (int t = 0; t < s; ++t) prod = prod * be.q(perm[t], it[t]);
        acc += prod;
      });
      e->q(jbar, ibar) = acc;
    }
  }
  for (int ibar = 0; ibar < ri; ++ibar) {
    const auto& it = info.orbit_rep[ibar];
    for (int jbar = 0; jbar < rj; ++jbar) {
      const auto& jt = jsets[jbar];
      S acc(0);
      for_each_perm(it, [&](const std::vector<int>& perm) {
        S prod(1);
        for (int t = 0; t < s; ++t) prod = prod * be.p(perm[t], jt[t]);
        acc += prod;
      });
      e->p(ibar, jbar) = acc;
    }
    e->k.push_back(ext.valency(ibar));
  }
  return e;
}

// ---------------------------------------------------------------------------
// exact eigenspace splitting in the regular representation (symmetric schemes
// with integer eigenvalues; returns nullptr when the spectrum is irrational)

// columns of the kernel of a square rational matrix
RatMatrix rat_kernel(RatMatrix a) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < m && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(row));
    Rat d = a(row, col);
    for (int c = 0; c < m; ++c) a(row, c) /= d;
    for (int i = 0; i < n; ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (int c = 0; c < m; ++c) a(i, c) -= f * a(row, c);
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<int> free_cols;
  for (int c = 0, pi = 0; c < m; ++c) {
    if (pi < static_cast<int>(pivot_col.size()) && pivot_col[pi] == c)
      ++pi;
    else
      free_cols.push_back(c);
  }
  RatMatrix ker(m, static_cast<int>(free_cols.size()));
  ker.setConstant(Rat(0));
  for (size_t fc = 0; fc < free_cols.size(); ++fc) {
    ker(free_cols[fc], static_cast<int>(fc)) = Rat(1);
    for (size_t pr = 0; pr < pivot_col.size(); ++pr)
      ker(pivot_col[pr], static_cast<int>(fc)) =
          -a(static_cast<int>(pr), free_cols[fc]);
  }
  return ker;
}

// solve B X = C where B has full column rank and C lies in span(B)
RatMatrix solve_in_span(const RatMatrix& b, const RatMatrix& c) {
  const int n = static_cast<int>(b.rows());
  const int d = static_cast<int>(b.cols());
  const int w = static_cast<int>(c.cols());
  RatMatrix aug(n, d + w);
  aug.leftCols(d) = b;
  aug.rightCols(w) = c;
  int row = 0;
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (aug(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::logic_error("solve_in_span: rank deficient");
    aug.row(piv).swap(aug.row(row));
    Rat dd = aug(row, col);
    for (int cc = col; cc < d + w; ++cc) aug(row, cc) /= dd;
    for (int i = 0; i < n; ++i) {
      if (i == row || aug(i, col) == 0) continue;
      Rat f = aug(i, col);
      for (int cc = col; cc < d + w; ++cc) aug(i, cc) -= f * aug(row, cc);
    }
    ++row;
  }
  for (int i = d; i < n; ++i)
    for (int cc = d; cc < d + w; ++cc)
      if (aug(i, cc) != 0)
        throw std::logic_error("solve_in_span: rhs outside span");
  return aug.block(0, d, d, w);
}

ExactEig regular_exact_spectral(const Scheme& s) {
  const int r = s.num_relations();
  const int n = s.num_points();
  const IntersectionTensor& t = s.intersection_numbers();

  std::vector<RatMatrix> blocks;
  {
    RatMatrix id(r, r);
    id.setConstant(Rat(0));
    for (int i = 0; i < r; ++i) id(i, i) = Rat(1);
    blocks.push_back(std::move(id));
  }
  for (int ir = 0; ir < r; ++ir) {
    // right multiplication by A_ir on the basis {A_a}: column a holds the
    // coefficients of A_a A_ir, i.e. M(k, a) = p_{a, ir}^k
    RatMatrix mm(r, r);
    for (int k = 0; k < r; ++k)
      for (int a = 0; a < r; ++a) mm(k, a) = Rat(t.at(k, a, ir));
    std::vector<RatMatrix> next;
    for (RatMatrix& b : blocks) {
      const int d = static_cast<int>(b.cols());
      if (d == 1) {
        next.push_back(std::move(b));
        continue;
      }
      RatMatrix x = solve_in_span(b, mm * b);  // d x d restricted operator
      long bound = s.valency(ir);
      int found = 0;
      std::vector<RatMatrix> parts;
      for (long theta = -bound; theta <= bound && found < d; ++theta) {
        RatMatrix shifted = x;
        for (int i = 0; i < d; ++i) shifted(i, i) -= Rat(theta);
        RatMatrix ker = rat_kernel(shifted);
        if (ker.cols() == 0) continue;
        found += static_cast<int>(ker.cols());
        parts.push_back(b * ker);
      }
      if (found != d) return nullptr;  // irrational eigenvalues
      for (auto& p : parts) next.push_back(std::move(p));
    }
    blocks = std::move(next);
  }
  for (const auto& b : blocks)
    if (b.cols() != 1) return nullptr;

  // normalize each common eigenvector u to the idempotent row q_j:
  // q_j = (u_{i0} / (u,u)_HS) u with (u,u)_HS = sum_i u_i^2 k_i / |X|
  struct Row {
    RatVector q;
    long m;
  };
  std::vector<Row> rows;
  const int i0 = s.identity();
  for (const auto& b : blocks) {
    RatVector u = b.col(0);
    Rat denom(0);
    for (int i = 0; i < r; ++i) denom += u[i] * u[i] * rat(s.valency(i), n);
    if (denom == 0) return nullptr;
    Rat alpha = u[i0] / denom;
    RatVector q = u;
    for (int i = 0; i < r; ++i) q[i] *= alpha;
    Rat mrat = q[i0];
    if (mrat <= 0 || !is_integer(mrat)) return nullptr;
    rows.push_back({std::move(q), static_cast<long>(mrat.get_num().get_si())});
  }

  // p_i(j) = k_i q_j(i) / (|X| m_j)  (real spectrum)
  auto p_entry = [&](const Row& row, int i) {
    return row.q[i] * rat(s.valency(i), 1) / (Rat(n) * Rat(row.m));
  };
  auto is_trivial = [&](const Row& row) {
    for (int i = 0; i < r; ++i)
      if (row.q[i] != 1) return false;
    return true;
  };
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (a.m != b.m) return a.m < b.m;
    for (int i = 0; i < r; ++i) {
      Rat pa = p_entry(a, i), pb = p_entry(b, i);
      if (pa != pb) return pa < pb;
    }
    return false;
  });
  if (rows.empty() || !is_trivial(rows[0])) return nullptr;

  auto e = std::make_shared<EigData<Cyc>>();
  e->num_points = n;
  e->i_labels = s.relation_labels();
  e->p.resize(r, r);
  e->q.resize(r, r);
  for (int j = 0; j < r; ++j) {
    e->j_labels.push_back(j == 0 ? "triv" : "j" + std::to_string(j));
    e->m.push_back(rows[j].m);
    for (int i = 0; i < r; ++i) {
      e->q(j, i) = Cyc(rows[j].q[i]);
      e->p(i, j) = Cyc(p_entry(rows[j], i));
    }
  }
  for (int i = 0; i < r; ++i) e->k.push_back(s.valency(i));
  return e;
}

// ---------------------------------------------------------------------------
// floating path: random algebra combination, dense diagonalization

FloatEig float_spectral_once(const Scheme& s, std::uint64_t seed,
                             std::string* why) {
  const int n = s.num_points();
  const int r = s.num_relations();
  if (n > 2048) throw input_error("floating spectral path limited to 2048 points");

  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  std::vector<double> c(r);
  for (int i = 0; i < r; ++i)
    c[i] = 1.0 + static_cast<double>(rng() % 9973) / 9973.0;

  Eigen::MatrixXd mreal(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) mreal(x, y) = c[s.rel(x, y)];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(mreal.cast<CD>());
  if (ces.info() != Eigen::Success) {
    *why = "eigensolver failed";
    return nullptr;
  }
  Eigen::VectorXcd lam = ces.eigenvalues();
  Eigen::MatrixXcd vec = ces.eigenvectors();

  double scale = 1.0;
  for (int t = 0; t < n; ++t) scale = std::max(scale, std::abs(lam[t]));
  const double cluster_tol = 1e-6 * scale;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (lam[a].real() != lam[b].real()) return lam[a].real() < lam[b].real();
    return lam[a].imag() < lam[b].imag();
  });
  std::vector<std::vector<int>> clusters;
  std::vector<CD> centers;
  for (int t : order) {
    int best = -1;
    for (size_t cidx = 0; cidx < centers.size(); ++cidx)
      if (std::abs(lam[t] - centers[cidx]) <= cluster_tol) {
        best = static_cast<int>(cidx);
        break;
      }
    if (best < 0) {
      clusters.push_back({t});
      centers.push_back(lam[t]);
    } else {
      clusters[best].push_back(t);
    }
  }
  if (static_cast<int>(clusters.size()) != r) {
    *why = "eigenvalue clusters (" + std::to_string(clusters.size()) +
           ") != |I| (" + std::to_string(r) + "); coefficient collision";
    return nullptr;
  }

  const double tol = 1e-9 * std::max(1, n);
  std::vector<Eigen::MatrixXcd> projectors;
  for (const auto& cl : clusters) {
    Eigen::MatrixXcd v(n, static_cast<int>(cl.size()));
    for (size_t t = 0; t < cl.size(); ++t) v.col(static_cast<int>(t)) = vec.col(cl[t]);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
    Eigen::MatrixXcd q1 =
        qr.householderQ() * Eigen::MatrixXcd::Identity(n, static_cast<int>(cl.size()));
    projectors.push_back(q1 * q1.adjoint());
  }

  // every candidate eigenspace must be invariant under every A_i
  for (int i = 0; i < r; ++i) {
    Eigen::MatrixXd ai = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (s.rel(x, y) == i) ai(x, y) = 1.0;
    for (const auto& pr : projectors) {
      Eigen::MatrixXcd lhs = ai * pr;
      Eigen::MatrixXcd resid = lhs - pr * lhs;
      double worst = resid.cwiseAbs().maxCoeff();
      if (worst > 1e-7 * std::max<double>(1.0, s.valency(i))) {
        *why = "candidate eigenspace not invariant under A_" +
               s.relation_labels()[i];
        return nullptr;
      }
    }
  }

  struct Row {
    std::vector<CD> q;
    long m;
    std::vector<CD> p;
    bool trivial;
  };
  std::vector<Row> rows;
  const int i0 = s.identity();
  for (const auto& pr : projectors) {
    Row row;
    row.q.assign(r, CD(0, 0));
    std::vector<CD> acc(r, CD(0, 0));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) acc[s.rel(x, y)] += pr(x, y);
    for (int i = 0; i < r; ++i)
      row.q[i] = acc[i] * (static_cast<double>(n) /
                           (static_cast<double>(n) * s.valency(i)));
    // E_j = |X| * projector, constant on classes; check constancy
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        CD entry = pr(x, y) * static_cast<double>(n);
        if (std::abs(entry - row.q[s.rel(x, y)]) > 1e-6 * n) {
          *why = "projector not constant on relation classes";
          return nullptr;
        }
      }
    double mj = row.q[i0].real();
    long m = std::lround(mj);
    if (std::abs(mj - m) > tol * 10 || std::abs(row.q[i0].imag()) > tol * 10 ||
        m <= 0) {
      *why = "multiplicity not a positive integer";
      return nullptr;
    }
    row.m = m;
    row.p.assign(r, CD(0, 0));
    for (int i = 0; i < r; ++i)
      row.p[i] = std::conj(row.q[i]) *
                 (static_cast<double>(s.valency(i)) /
                  (static_cast<double>(n) * static_cast<double>(m)));
    row.trivial = true;
    for (int i = 0; i < r; ++i)
      if (std::abs(row.q[i] - CD(1, 0)) > 1e-6) row.trivial = false;
    rows.push_back(std::move(row));
  }

  long msum = 0;
  for (const auto& row : rows) msum += row.m;
  if (msum != n) {
    *why = "multiplicities do not sum to |X|";
    return nullptr;
  }
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    if (a.trivial != b.trivial) return a.trivial;
    if (a.m != b.m) return a.m < b.m;
    for (int i = 0; i < r; ++i) {
      if (a.p[i].real() != b.p[i].real()) return a.p[i].real() < b.p[i].real();
      if (a.p[i].imag() != b.p[i].imag()) return a.p[i].imag() < b.p[i].imag();
    }
    return false;
  });
  if (!rows[0].trivial) {
    *why = "no trivial eigenspace found";
    return nullptr;
  }

  // q_j(i) above came out of |X| * projector averaged per class; fix scaling:
  // the class average already is E_j(x,y), no k_i division remains
  auto e = std::make_shared<EigData<CD>>();
  e->num_points = n;
  e->i_labels = s.relation_labels();
  e->p.resize(r, r);
  e->q.resize(r, r);
  for (int j = 0; j < r; ++j) {
    e->j_labels.push_back(j == 0 ? "triv" : "j" + std::to_string(j));
    e->m.push_back(rows[j].m);
    for (int i = 0; i < r; ++i) {
      e->q(j, i) = rows[j].q[i];
      e->p(i, j) = rows[j].p[i];
    }
  }
  for (int i = 0; i < r; ++i) e->k.push_back(s.valency(i));
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// invariant battery

template <class S>
std::string check_eigdata(const Scheme& s, const EigData<S>& e, double tol) {
  using ST = scalar_traits<S>;
  const int r = s.num_relations();
  const int nj = e.num_j();
  const long n = s.num_points();
  const double atol = tol * std::max<long>(1, n);
  auto ok_rat = [&](const S& v, const Rat& target) {
    return ST::is_zero(v - ST::from_rat(target), atol);
  };
  if (e.num_i() != r || e.num_points != n) return "shape mismatch";
  if (nj != r) return "a commutative scheme must have |J| = |I|";

  long msum = std::accumulate(e.m.begin(), e.m.end(), 0L);
  long ksum = std::accumulate(e.k.begin(), e.k.end(), 0L);
  if (msum != n) return "sum of multiplicities != |X|";
  if (ksum != n) return "sum of valencies != |X|";
  for (int i = 0; i < r; ++i)
    if (e.k[i] != s.valency(i)) return "valency mismatch at " + e.i_labels[i];

  const int i0 = s.identity();
  for (int i = 0; i < r; ++i)
    if (!ok_rat(e.q(0, i), Rat(1))) return "q_{triv} is not all ones";
  for (int j = 0; j < nj; ++j)
    if (!ok_rat(e.q(j, i0), Rat(e.m[j])))
      return "m_j != q_j(i0) at " + e.j_labels[j];

  // sum_j E_j = E_X
  for (int i = 0; i < r; ++i) {
    S acc(0);
    for (int j = 0; j < nj; ++j) acc += e.q(j, i);
    if (!ok_rat(acc, i == i0 ? Rat(n) : Rat(0)))
      return "sum_j E_j != E_X at relation " + e.i_labels[i];
  }

  // biorthogonality p q = id_I and q p = id_J
  for (int i = 0; i < r; ++i)
    for (int i2 = 0; i2 < r; ++i2) {
      S acc(0);
      for (int j = 0; j < nj; ++j) acc += e.p(i, j) * e.q(j, i2);
      if (!ok_rat(acc, i == i2 ? Rat(1) : Rat(0)))
        return "p q != id at (" + e.i_labels[i] + ", " + e.i_labels[i2] + ")";
    }
  for (int j = 0; j < nj; ++j)
    for (int j2 = 0; j2 < nj; ++j2) {
      S acc(0);
      for (int i = 0; i < r; ++i) acc += e.q(j, i) * e.p(i, j2);
      if (!ok_rat(acc, j == j2 ? Rat(1) : Rat(0)))
        return "q p != id at (" + e.j_labels[j] + ", " + e.j_labels[j2] + ")";
    }

  // row orthogonality: sum_j p_i(j) conj(p_{i'}(j)) m_j = delta k_i / |X|
  for (int i = 0; i < r; ++i)
    for (int i2 = 0; i2 < r; ++i2) {
      S acc(0);
      for (int j = 0; j < nj; ++j)
        acc += e.p(i, j) * conj(e.p(i2, j)) * ST::from_rat(Rat(e.m[j]));
      if (!ok_rat(acc, i == i2 ? rat(e.k[i], n) : Rat(0)))
        return "row orthogonality fails at (" + e.i_labels[i] + ", " +
               e.i_labels[i2] + ")";
    }
  // column orthogonality: sum_i q_j(i) conj(q_{j'}(i)) k_i / |X| = delta m_j
  for (int j = 0; j < nj; ++j)
    for (int j2 = 0; j2 < nj; ++j2) {
      S acc(0);
      for (int i = 0; i < r; ++i)
        acc += e.q(j, i) * conj(e.q(j2, i)) * ST::from_rat(rat(e.k[i], n));
      if (!ok_rat(acc, j == j2 ? Rat(e.m[j]) : Rat(0)))
        return "column orthogonality fails at (" + e.j_labels[j] + ", " +
               e.j_labels[j2] + ")";
    }

  // idempotency E_j * E_j = E_j under convolution
  SchemePtr sp = s.shared_from_this();
  for (int j = 0; j < nj; ++j) {
    auto ej = idempotent_element<S>(sp, e, j);
    auto sq = convolve(ej, ej);
    for (int i = 0; i < r; ++i)
      if (!ST::is_zero(sq.coeff[i] - ej.coeff[i], atol))
        return "E_j not idempotent at " + e.j_labels[j];
  }
  return "";
}

template std::string check_eigdata<Cyc>(const Scheme&, const EigData<Cyc>&,
                                        double);
template std::string check_eigdata<CD>(const Scheme&, const EigData<CD>&,
                                       double);

// ---------------------------------------------------------------------------
// routing and caches

namespace {

ExactEig compute_exact(const SchemePtr& s, const SpectralOptions& o) {
  SpectralRoute route = o.route;
  if (route == SpectralRoute::kAuto) {
    if (std::holds_alternative<KernelInfo>(s->structure()))
      route = SpectralRoute::kClosedForm;
    else if (std::holds_alternative<TranslationInfo>(s->structure()))
      route = SpectralRoute::kCharacters;
    else if (std::holds_alternative<ExtensionInfo>(s->structure()))
      route = SpectralRoute::kTensor;
    else
      route = SpectralRoute::kRegularExact;
  }
  switch (route) {
    case SpectralRoute::kClosedForm: {
      const auto* ki = std::get_if<KernelInfo>(&s->structure());
      if (!ki) throw input_error("closed-form route needs a kernel scheme");
      return closed_form_spectral(*s, *ki);
    }
    case SpectralRoute::kCharacters:
      return characters_spectral(*s);
    case SpectralRoute::kTensor: {
      const auto* xi = std::get_if<ExtensionInfo>(&s->structure());
      if (!xi) throw input_error("tensor route needs an extension scheme");
      ExactEig base = spectral_data_exact(xi->base, SpectralOptions{});
      if (!base) return nullptr;
      return extension_spectral<Cyc>(*s, *xi, *base);
    }
    case SpectralRoute::kRegularExact:
      return regular_exact_spectral(*s);
    default:
      return nullptr;
  }
}

FloatEig exact_to_float(const EigData<Cyc>& e) {
  auto f = std::make_shared<EigData<CD>>();
  f->num_points = e.num_points;
  f->i_labels = e.i_labels;
  f->j_labels = e.j_labels;
  f->m = e.m;
  f->k = e.k;
  f->p.resize(e.p.rows(), e.p.cols());
  f->q.resize(e.q.rows(), e.q.cols());
  for (int i = 0; i < e.p.rows(); ++i)
    for (int j = 0; j < e.p.cols(); ++j) f->p(i, j) = e.p(i, j).to_complex();
  for (int j = 0; j < e.q.rows(); ++j)
    for (int i = 0; i < e.q.cols(); ++i) f->q(j, i) = e.q(j, i).to_complex();
  return f;
}

// continued-fraction rational reconstruction
bool rationalize(double x, long max_den, Rat* out) {
  double v = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(v);
    if (fl > 1e15 || fl < -1e15) return false;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = v - fl;
    if (rem < 1e-13) break;
    v = 1.0 / rem;
  }
  if (q1 == 0) return false;
  Rat cand = rat(p1, q1);
  if (std::fabs(to_double(cand) - x) > 1e-8) return false;
  *out = cand;
  return true;
}

ExactEig exactify(const Scheme& s, const EigData<CD>& f) {
  auto e = std::make_shared<EigData<Cyc>>();
  e->num_points = f.num_points;
  e->i_labels = f.i_labels;
  e->j_labels = f.j_labels;
  e->m = f.m;
  e->k = f.k;
  e->p.resize(f.p.rows(), f.p.cols());
  e->q.resize(f.q.rows(), f.q.cols());
  const long max_den =
      static_cast<long>(f.num_points) * static_cast<long>(f.num_points) * 64;
  for (int j = 0; j < f.q.rows(); ++j)
    for (int i = 0; i < f.q.cols(); ++i) {
      if (std::abs(f.q(j, i).imag()) > 1e-9 * f.num_points) return nullptr;
      Rat r;
      if (!rationalize(f.q(j, i).real(), max_den, &r)) return nullptr;
      e->q(j, i) = Cyc(r);
    }
  for (int i = 0; i < f.p.rows(); ++i)
    for (int j = 0; j < f.p.cols(); ++j) {
      if (std::abs(f.p(i, j).imag()) > 1e-9 * f.num_points) return nullptr;
      Rat r;
      if (!rationalize(f.p(i, j).real(), max_den, &r)) return nullptr;
      e->p(i, j) = Cyc(r);
    }
  if (!check_eigdata<Cyc>(s, *e).empty()) return nullptr;
  return e;
}

}  // namespace

ExactEig spectral_data_exact(const SchemePtr& s, const SpectralOptions& o) {
  if (!s->is_commutative())
    throw input_error("spectral data requires a commutative scheme");
  const bool cacheable = o.route == SpectralRoute::kAuto;
  if (cacheable) {
    std::lock_guard<std::mutex> lock(s->cache_mu);
    if (s->exact_spectral_cache) return s->exact_spectral_cache;
  }
  ExactEig e = compute_exact(s, o);
  if (e && o.verify) {
    std::string err = check_eigdata<Cyc>(*s, *e);
    if (!err.empty())
      throw input_error("exact spectral data failed verification: " + err);
  }
  if (e && cacheable) {
    std::lock_guard<std::mutex> lock(s->cache_mu);
    if (!s->exact_spectral_cache) s->exact_spectral_cache = e;
    return s->exact_spectral_cache;
  }
  return e;
}

FloatEig spectral_data_float(const SchemePtr& s, const SpectralOptions& o) {
  if (!s->is_commutative())
    throw input_error("spectral data requires a commutative scheme");
  if (o.route != SpectralRoute::kFloat) {
    ExactEig e = spectral_data_exact(s, o);
    if (e) {
      std::lock_guard<std::mutex> lock(s->cache_mu);
      if (!s->float_spectral_cache) s->float_spectral_cache = exact_to_float(*e);
      return s->float_spectral_cache;
    }
  }
  std::string why = "no attempt";
  for (int attempt = 0; attempt < o.max_retries; ++attempt) {
    FloatEig f = float_spectral_once(*s, o.seed + attempt, &why);
    if (!f) continue;
    if (o.verify) {
      std::string err = check_eigdata<CD>(*s, *f, 1e-9);
      if (!err.empty()) {
        why = err;
        continue;
      }
    }
    if (o.route != SpectralRoute::kFloat) {
      std::lock_guard<std::mutex> lock(s->cache_mu);
      if (!s->float_spectral_cache) s->float_spectral_cache = f;
      return s->float_spectral_cache;
    }
    return f;
  }
  throw tolerance_error("floating spectral path failed after " +
                        std::to_string(o.max_retries) + " seeds: " + why);
}

SpectralAny spectral_data(const SchemePtr& s, const SpectralOptions& o) {
  SpectralAny out;
  if (o.route == SpectralRoute::kFloat) {
    out.flt = spectral_data_float(s, o);
    return out;
  }
  out.exact = spectral_data_exact(s, o);
  if (out.exact) return out;
  // exact route unavailable: floating fallback with post-hoc exactification
  SpectralOptions fo = o;
  fo.route = SpectralRoute::kFloat;
  FloatEig f = spectral_data_float(s, fo);
  ExactEig e = exactify(*s, *f);
  if (e) {
    std::lock_guard<std::mutex> lock(s->cache_mu);
    if (!s->exact_spectral_cache) s->exact_spectral_cache = e;
    out.exact = s->exact_spectral_cache;
  } else {
    out.flt = f;
  }
  return out;
}

}  // namespace assoc
