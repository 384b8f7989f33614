#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cheb {

using ClassId = std::uint32_t;

/// Labels used by Aff(F_p); generic tables just number their classes 0..k-1.
inline constexpr ClassId kIdentityClass = 0;
inline constexpr ClassId kKernelClass = 1;

struct ConjClass {
  ClassId id = 0;
  std::uint64_t size = 0;
  // Representative x -> multiplier*x + shift. Zero for injected tables.
  std::uint64_t multiplier = 0;
  std::uint64_t shift = 0;
};

enum class CharacterKind { Abelian, NonAbelian };

struct Character {
  std::uint64_t table_id = 0;
  std::size_t index = 0;
  CharacterKind kind = CharacterKind::Abelian;
  // j for the abelian character c = g^k -> exp(2 pi i jk/(p-1)); unused for theta.
  std::uint64_t abelian_index = 0;
  std::int64_t degree = 1;
  std::vector<std::complex<double>> values;  // one per class, in class order

  std::complex<double> operator()(ClassId c) const { return values[c]; }
};

/// A class function, one value per conjugacy class.
struct ClassFunction {
  std::vector<std::complex<double>> values;

  static ClassFunction zero(std::size_t num_classes);
  static ClassFunction constant(std::size_t num_classes, double v);
  static ClassFunction of(const Character& chi);
};

/// Conjugacy classes plus irreducible characters of a finite group. Built
/// concretely for Aff(F_p); tests may inject other tables through the
/// public constructor. Immutable once constructed.
class CharacterTable {
 public:
  CharacterTable(std::uint64_t order, std::vector<ConjClass> classes,
                 std::vector<Character> characters);

  std::uint64_t id() const noexcept { return id_; }
  std::uint64_t order() const noexcept { return order_; }
  std::size_t num_classes() const noexcept { return classes_.size(); }
  std::span<const ConjClass> classes() const noexcept { return classes_; }
  std::span<const Character> characters() const noexcept { return characters_; }
  const ConjClass& conj_class(ClassId c) const { return classes_.at(c); }
  const Character& character(std::size_t i) const { return characters_.at(i); }

  /// The unique character of degree d with d(d+1) = |G|, if there is one.
  const Character* theta() const noexcept;
  /// d = theta(1); zero when the table has no such character.
  std::int64_t d() const noexcept;

  /// Conjugate character (complex-conjugate values) as a row of this table.
  const Character& conjugate(const Character& chi) const;

  /// t_C = (|G|/|C|) 1_C.
  ClassFunction scaled_indicator(ClassId c) const;

  /// Max deviation of <chi_i, chi_j>_G from the identity matrix (first
  /// orthogonality relation).
  double row_orthogonality_error() const;
  /// Max deviation of sum_chi chi(C) conj(chi(C')) from delta |G|/|C|.
  double column_orthogonality_error() const;

 private:
  std::uint64_t id_;
  std::uint64_t order_;
  std::vector<ConjClass> classes_;
  std::vector<Character> characters_;
  std::optional<std::size_t> theta_index_;
  std::vector<std::size_t> conjugate_index_;
};

/// x -> multiplier*x + shift over F_p.
struct AffineElement {
  std::uint64_t multiplier = 1;
  std::uint64_t shift = 0;
};

/// Aff(F_p) = {x -> cx + d}, the doubly transitive Frobenius group of order
/// p(p-1) with kernel the translations and complement F_p^x.
///
/// Class ids: 0 = identity, 1 = nontrivial translations, c in {2..p-1} =
/// elements with multiplier c. Characters 0..p-2 are the abelian ones
/// (index j, via the smallest primitive root g), character p-1 is theta.
class AffineGroup {
 public:
  static AffineGroup build(std::uint64_t p);

  std::uint64_t p() const noexcept { return p_; }
  std::int64_t d() const noexcept { return static_cast<std::int64_t>(p_ - 1); }
  std::uint64_t order() const noexcept { return p_ * (p_ - 1); }
  std::uint64_t primitive_root() const noexcept { return g_; }
  const CharacterTable& table() const noexcept { return table_; }

  AffineElement compose(AffineElement f, AffineElement g) const;  // f after g
  AffineElement power(AffineElement e, std::uint64_t m) const;
  ClassId class_of(AffineElement e) const;

  /// Class of g^m for any g in the class c.
  ClassId class_power(ClassId c, std::uint64_t m) const;

  /// Discrete log base g: c = g^k, c in 1..p-1.
  std::uint64_t dlog(std::uint64_t c) const { return dlog_.at(c); }

 private:
  AffineGroup(std::uint64_t p, std::uint64_t g, std::vector<std::uint64_t> dlog,
              CharacterTable table);

  std::uint64_t p_;
  std::uint64_t g_;
  std::vector<std::uint64_t> dlog_;
  CharacterTable table_;
};

/// (1/|G|) sum_C |C| t(C) conj(chi(C)).
std::complex<double> t_hat(const CharacterTable& table, const ClassFunction& t,
                           const Character& chi);

struct ClassSum {
  std::complex<double> brute_force;
  // d^k + (-1)^k d, or |G| delta(product trivial); absent if the table has no theta.
  std::optional<std::int64_t> closed_form;
};

/// sum_C |C| chi_1(C)...chi_n(C), by direct summation and by the
/// generalized orthogonality of doubly transitive Frobenius groups.
ClassSum class_sum(const CharacterTable& table, std::span<const Character> chars);

/// Closed form only, from the character kinds; chars must all belong to table.
std::int64_t class_sum_closed_form(const CharacterTable& table,
                                   std::span<const Character* const> chars);

}  // namespace cheb
