#include "ellstat/ffield.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace ellstat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::PrimeTooSmall: return "PrimeTooSmall";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::UndefinedForSpecialClass: return "UndefinedForSpecialClass";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidM: return "InvalidM";
    case ErrorCode::ZeroTrace: return "ZeroTrace";
    case ErrorCode::InvalidStatistic: return "InvalidStatistic";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptCache: return "CorruptCache";
    case ErrorCode::CacheMiss: return "CacheMiss";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_list(std::int64_t x) {
  std::vector<std::int64_t> out;
  if (x < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(x) + 1, false);
  for (std::int64_t i = 2; i <= x; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= x; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

namespace {

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

Residue PrimeContext::pow(Residue a, std::uint64_t e) const {
  return static_cast<Residue>(powmod(a, e, p_));
}

Residue smallest_primitive_root(std::int64_t p) {
  if (p == 2) return 1;
  const auto factors = distinct_prime_factors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return static_cast<Residue>(g);
  }
  throw Error(ErrorCode::NotPrime, "no primitive root modulo " + std::to_string(p));
}

PrimeContext build_context(std::int64_t p) {
  if (p > kMaxPrime)
    throw Error(ErrorCode::CapacityExceeded,
                "p = " + std::to_string(p) + " exceeds the supported limit 2^20");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p <= 3) throw Error(ErrorCode::PrimeTooSmall, "p must exceed 3, got " + std::to_string(p));

  PrimeContext ctx;
  ctx.p_ = static_cast<Residue>(p);
  ctx.g_ = smallest_primitive_root(p);
  ctx.d_p_ = static_cast<int>(std::gcd(p - 1, std::int64_t{6}));
  ctx.e_p_ = static_cast<int>(std::gcd(p - 1, std::int64_t{4}));

  const auto n = static_cast<std::size_t>(p);
  ctx.dlog_.assign(n, 0);
  ctx.exp_.assign(n - 1, 0);
  ctx.qr_.assign(n, 0);
  std::uint64_t x = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    ctx.exp_[k] = static_cast<Residue>(x);
    ctx.dlog_[x] = static_cast<std::uint32_t>(k);
    ctx.qr_[x] = (k % 2 == 0) ? 1 : -1;
    x = x * ctx.g_ % n;
  }
  return ctx;
}

std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t n) {
  k %= n;
  if (k == 0) return {1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

CharacterHandle::CharacterHandle(const PrimeContext& ctx, std::uint32_t index)
    : ctx_(&ctx), index_(index) {
  const std::uint32_t group = ctx.p() - 1;
  const std::uint32_t g = std::gcd(index, group);
  order_ = index == 0 ? 1 : group / g;
  step_ = index == 0 ? 0 : index / g;
}

std::uint32_t CharacterHandle::exponent(Residue n) const {
  if (order_ == 1) return 0;
  return static_cast<std::uint32_t>((std::uint64_t{step_} * ctx_->dlog(n)) % order_);
}

std::complex<double> CharacterHandle::operator()(std::int64_t n) const {
  const Residue r = ctx_->reduce(n);
  if (r == 0) return {0.0, 0.0};
  return root_of_unity(exponent(r), order_);
}

CharacterHandle character(const PrimeContext& ctx, std::int64_t j) {
  if (j < 0 || j > static_cast<std::int64_t>(ctx.p()) - 2)
    throw Error(ErrorCode::IndexOutOfRange,
                "character index " + std::to_string(j) + " outside [0, p-2]");
  return CharacterHandle(ctx, static_cast<std::uint32_t>(j));
}

std::vector<CharacterHandle> characters_of_order_dividing(const PrimeContext& ctx, int d) {
  const std::uint32_t group = ctx.p() - 1;
  if (d <= 0 || group % static_cast<std::uint32_t>(d) != 0)
    throw Error(ErrorCode::InvalidArgument, "d must divide p-1");
  std::vector<CharacterHandle> out;
  const std::uint32_t stride = group / static_cast<std::uint32_t>(d);
  for (int k = 1; k < d; ++k) out.emplace_back(ctx, stride * static_cast<std::uint32_t>(k));
  return out;
}

}  // namespace ellstat
