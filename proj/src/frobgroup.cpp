#include "cheb/frobgroup.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

#include "cheb/arith.hpp"
#include "cheb/error.hpp"

namespace cheb {

namespace {

std::atomic<std::uint64_t> next_table_id{1};

constexpr double kTol = 1e-9;

bool near(std::complex<double> a, std::complex<double> b, double tol = kTol) {
  return std::abs(a - b) <= tol;
}

}  // namespace

// ---------------------------------------------------------------------------
// ClassFunction

ClassFunction ClassFunction::zero(std::size_t num_classes) {
  return ClassFunction{std::vector<std::complex<double>>(num_classes, 0.0)};
}

ClassFunction ClassFunction::constant(std::size_t num_classes, double v) {
  return ClassFunction{std::vector<std::complex<double>>(num_classes, v)};
}

ClassFunction ClassFunction::of(const Character& chi) { return ClassFunction{chi.values}; }

// ---------------------------------------------------------------------------
// CharacterTable

CharacterTable::CharacterTable(std::uint64_t order, std::vector<ConjClass> classes,
                               std::vector<Character> characters)
    : id_(next_table_id.fetch_add(1)),
      order_(order),
      classes_(std::move(classes)),
      characters_(std::move(characters)) {
  for (std::size_t i = 0; i < characters_.size(); ++i) {
    characters_[i].table_id = id_;
    characters_[i].index = i;
    if (characters_[i].values.size() != classes_.size()) {
      throw Error(ErrorCode::InvalidArgument, "character row length differs from class count");
    }
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) classes_[i].id = static_cast<ClassId>(i);

  for (const auto& chi : characters_) {
    const auto deg = static_cast<std::uint64_t>(chi.degree);
    if (chi.kind == CharacterKind::NonAbelian && deg * (deg + 1) == order_) {
      theta_index_ = chi.index;
    }
  }

  conjugate_index_.resize(characters_.size());
  for (const auto& chi : characters_) {
    auto it = std::find_if(characters_.begin(), characters_.end(), [&](const Character& psi) {
      for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (!near(psi.values[c], std::conj(chi.values[c]))) return false;
      }
      return true;
    });
    if (it == characters_.end()) {
      throw Error(ErrorCode::InvalidArgument, "table is not closed under conjugation");
    }
    conjugate_index_[chi.index] = it->index;
  }
}

const Character* CharacterTable::theta() const noexcept {
  return theta_index_ ? &characters_[*theta_index_] : nullptr;
}

std::int64_t CharacterTable::d() const noexcept {
  return theta_index_ ? characters_[*theta_index_].degree : 0;
}

const Character& CharacterTable::conjugate(const Character& chi) const {
  if (chi.table_id != id_) throw Error(ErrorCode::MixedTables, "character from another table");
  return characters_[conjugate_index_[chi.index]];
}

ClassFunction CharacterTable::scaled_indicator(ClassId c) const {
  auto t = ClassFunction::zero(classes_.size());
  t.values.at(c) = static_cast<double>(order_) / static_cast<double>(classes_[c].size);
  return t;
}

double CharacterTable::row_orthogonality_error() const {
  double worst = 0.0;
  for (const auto& chi : characters_) {
    for (const auto& psi : characters_) {
      std::complex<double> s = 0.0;
      for (const auto& cls : classes_) {
        s += static_cast<double>(cls.size) * chi.values[cls.id] * std::conj(psi.values[cls.id]);
      }
      s /= static_cast<double>(order_);
      worst = std::max(worst, std::abs(s - (chi.index == psi.index ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double CharacterTable::column_orthogonality_error() const {
  double worst = 0.0;
  for (const auto& a : classes_) {
    for (const auto& b : classes_) {
      std::complex<double> s = 0.0;
      for (const auto& chi : characters_) s += chi.values[a.id] * std::conj(chi.values[b.id]);
      const double expected =
          a.id == b.id ? static_cast<double>(order_) / static_cast<double>(a.size) : 0.0;
      worst = std::max(worst, std::abs(s - expected));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// AffineGroup

AffineGroup::AffineGroup(std::uint64_t p, std::uint64_t g, std::vector<std::uint64_t> dlog,
                         CharacterTable table)
    : p_(p), g_(g), dlog_(std::move(dlog)), table_(std::move(table)) {}

AffineGroup AffineGroup::build(std::uint64_t p) {
  if (p < 3) throw Error(ErrorCode::TooSmall, "p must be at least 3, got " + std::to_string(p));
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p > 257) throw Error(ErrorCode::Overflow, "class ids are one byte; p must be <= 257");

  const std::uint64_t d = p - 1;
  const std::uint64_t g = cheb::primitive_root(p);
  std::vector<std::uint64_t> dlog(p, 0);
  for (std::uint64_t k = 0, x = 1; k < d; ++k, x = x * g % p) dlog[x] = k;

  std::vector<ConjClass> classes(p);
  classes[kIdentityClass] = {kIdentityClass, 1, 1, 0};
  classes[kKernelClass] = {kKernelClass, d, 1, 1};
  for (std::uint64_t c = 2; c < p; ++c) classes[c] = {static_cast<ClassId>(c), p, c, 0};

  std::vector<Character> chars;
  chars.reserve(p);
  for (std::uint64_t j = 0; j < d; ++j) {
    Character chi;
    chi.kind = CharacterKind::Abelian;
    chi.abelian_index = j;
    chi.degree = 1;
    chi.values.assign(p, 1.0);
    for (std::uint64_t c = 2; c < p; ++c) {
      const std::uint64_t e = j * dlog[c] % d;
      if (e == 0) continue;
      // Exact values at the real points keep integer class sums exact.
      if (2 * e == d) {
        chi.values[c] = -1.0;
      } else {
        chi.values[c] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) /
                                            static_cast<double>(d));
      }
    }
    chars.push_back(std::move(chi));
  }
  Character theta;
  theta.kind = CharacterKind::NonAbelian;
  theta.degree = static_cast<std::int64_t>(d);
  theta.values.assign(p, 0.0);
  theta.values[kIdentityClass] = static_cast<double>(d);
  theta.values[kKernelClass] = -1.0;
  chars.push_back(std::move(theta));

  return AffineGroup(p, g, std::move(dlog), CharacterTable(p * d, std::move(classes), std::move(chars)));
}

AffineElement AffineGroup::compose(AffineElement f, AffineElement g) const {
  // f(g(x)) = f.m (g.m x + g.s) + f.s
  return {f.multiplier * g.multiplier % p_, (f.multiplier * g.shift + f.shift) % p_};
}

AffineElement AffineGroup::power(AffineElement e, std::uint64_t m) const {
  AffineElement result{1, 0};
  while (m > 0) {
    if (m & 1) result = compose(result, e);
    e = compose(e, e);
    m >>= 1;
  }
  return result;
}

ClassId AffineGroup::class_of(AffineElement e) const {
  const std::uint64_t c = e.multiplier % p_;
  if (c != 1) return static_cast<ClassId>(c);
  return e.shift % p_ == 0 ? kIdentityClass : kKernelClass;
}

ClassId AffineGroup::class_power(ClassId c, std::uint64_t m) const {
  if (c == kIdentityClass) return kIdentityClass;
  if (c == kKernelClass) return m % p_ == 0 ? kIdentityClass : kKernelClass;
  const std::uint64_t cm = powmod(c, m, p_);
  return cm == 1 ? kIdentityClass : static_cast<ClassId>(cm);
}

// ---------------------------------------------------------------------------

std::complex<double> t_hat(const CharacterTable& table, const ClassFunction& t,
                           const Character& chi) {
  if (chi.table_id != table.id()) throw Error(ErrorCode::MixedTables, "t_hat");
  if (t.values.size() != table.num_classes()) {
    throw Error(ErrorCode::InvalidArgument, "class function has wrong length");
  }
  std::complex<double> s = 0.0;
  for (const auto& cls : table.classes()) {
    s += static_cast<double>(cls.size) * t.values[cls.id] * std::conj(chi.values[cls.id]);
  }
  return s / static_cast<double>(table.order());
}

std::int64_t class_sum_closed_form(const CharacterTable& table,
                                   std::span<const Character* const> chars) {
  const Character* theta = table.theta();
  if (theta == nullptr) {
    throw Error(ErrorCode::PreconditionFailed, "table has no character of degree d with d(d+1) = |G|");
  }
  std::int64_t k = 0;
  std::vector<std::complex<double>> product(table.num_classes(), 1.0);
  for (const Character* chi : chars) {
    if (chi->table_id != table.id()) throw Error(ErrorCode::MixedTables, "class_sum");
    if (chi->index == theta->index) {
      ++k;
      continue;
    }
    for (std::size_t c = 0; c < product.size(); ++c) product[c] *= chi->values[c];
  }
  if (k == 0) {
    const bool trivial = std::all_of(product.begin(), product.end(),
                                     [](std::complex<double> v) { return near(v, 1.0, 1e-6); });
    return trivial ? static_cast<std::int64_t>(table.order()) : 0;
  }
  const std::int64_t d = table.d();
  std::int64_t dk = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    if (dk > INT64_MAX / d) throw Error(ErrorCode::Overflow, "d^k exceeds 64 bits");
    dk *= d;
  }
  return dk + (k % 2 == 0 ? d : -d);
}

ClassSum class_sum(const CharacterTable& table, std::span<const Character> chars) {
  if (chars.empty()) throw Error(ErrorCode::InvalidArgument, "class_sum needs at least one character");
  std::vector<const Character*> ptrs;
  ptrs.reserve(chars.size());
  for (const auto& chi : chars) {
    if (chi.table_id != table.id()) throw Error(ErrorCode::MixedTables, "class_sum");
    ptrs.push_back(&chi);
  }
  ClassSum out;
  for (const auto& cls : table.classes()) {
    std::complex<double> prod = static_cast<double>(cls.size);
    for (const auto& chi : chars) prod *= chi.values[cls.id];
    out.brute_force += prod;
  }
  if (table.theta() != nullptr) out.closed_form = class_sum_closed_form(table, ptrs);
  return out;
}

}  // namespace cheb
