#pragma once

#include <string>
#include <vector>

#include "assoc/scheme.hpp"

namespace assoc {

// Finite group by multiplication table; element 0 is the unit.
struct GroupTable {
  std::vector<std::string> labels;
  std::vector<int> mul;  // row-major: (e, f) -> mul[e * order + f]

  int order() const { return static_cast<int>(labels.size()); }
  int times(int e, int f) const { return mul[e * order() + f]; }
  int inverse(int e) const;
  bool is_abelian() const;

  // Z_{o_1} x ... x Z_{o_r}, elements labeled by '.'-joined digit tuples,
  // mixed-radix index order (big-endian).
  static GroupTable cyclic_product(const std::vector<long>& orders);
};

// Thin scheme of G: I = G, R(x, y) = x^{-1} y; unit relabeled "id".
SchemePtr thin_scheme(const GroupTable& g);

// Thin scheme of an abelian product of cyclic groups, with translation
// structure attached (exact character spectral route).
SchemePtr thin_abelian(const std::vector<long>& orders);

struct TranslationSpec {
  std::vector<long> orders;            // abelian group Z_{o_1} x ...
  std::vector<std::string> relations;  // I labels, containing identity_label
  std::string identity_label = "id";
  std::vector<int> smap;  // group element index -> relation index
};

// Scheme R(x, y) = S(y - x). Validates S(0) = i0 (and only there), transpose
// closure of the partition, and the algebra closure via character classes.
SchemePtr translation_scheme(const TranslationSpec& spec);

// Kernel scheme k(n, v): words of length n over Z_v, colored by the first
// differing index ("1".."n"), identity "id". Points are labeled by digit
// strings, most significant (= index 1) digit first.
SchemePtr kernel_scheme(long n, long v);

// Extension of length s of a commutative scheme: points X^s, relations
// I^s / S_s. Point labels join component labels with ','; relation orbit
// labels list components sorted with the identity greatest, e.g. "id,1".
SchemePtr extend_scheme(const SchemePtr& base, int s);

// Ordered Hamming scheme H(s, n, v) = extension of length s of k(n, v).
SchemePtr ordered_hamming(int s, long n, long v);

// Schurian scheme of a transitive permutation action: relations are the
// orbitals (orbits of the diagonal action on X x X).
SchemePtr schurian_scheme(int degree, const std::vector<std::vector<int>>& generators);

// S_s-orbit of a tuple over J_n = {0..n}, canonical form sorted descending.
struct ShapeIndex {
  std::vector<long> entries;  // sorted descending

  long height() const;
  std::string label() const;  // "triv" for the zero shape, else "2,1,0" style
  // Parses an extension-of-kernel eigenspace label ("triv", "3", "2,1",
  // "1,triv", ...).
  static ShapeIndex parse(const std::string& j_label, int s);
};

// Heights of every eigenspace of an (ordered Hamming or kernel) scheme, in
// J order of its spectral data labels.
std::vector<long> shape_heights(const std::vector<std::string>& j_labels,
                                int s);

// digit <-> character helpers for word alphabets (v <= 36)
char digit_char(long d);
long digit_value(char c);

}  // namespace assoc
