#include "cheb/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "cheb/arith.hpp"
#include "cheb/error.hpp"
#include "cheb/parallel.hpp"

namespace cheb {

bool is_admissible(std::uint64_t a, std::uint64_t p) {
  if (p < 3 || p > 257 || !is_prime(p) || !is_prime(a) || a == p) return false;
  const std::uint64_t p2 = p * p;
  return powmod(a % p2, p - 1, p2) != 1;
}

void require_admissible(std::uint64_t a, std::uint64_t p) {
  const std::string pair = "(a, p) = (" + std::to_string(a) + ", " + std::to_string(p) + ")";
  if (!is_prime(p) || p < 3) throw Error(ErrorCode::AdmissibilityFailed, pair + ": p must be an odd prime");
  if (p > 257) throw Error(ErrorCode::AdmissibilityFailed, pair + ": p > 257 does not fit one-byte class ids");
  if (!is_prime(a)) throw Error(ErrorCode::AdmissibilityFailed, pair + ": a must be prime");
  if (a == p) throw Error(ErrorCode::AdmissibilityFailed, pair + ": a must differ from p");
  if (!is_admissible(a, p)) throw Error(ErrorCode::AdmissibilityFailed, pair + ": p^2 divides a^(p-1) - 1");
}

ClassId frobenius_class(std::uint64_t q, std::uint64_t a, std::uint64_t p) {
  if (q % p == 0 || q % a == 0) {
    throw Error(ErrorCode::Ramified, std::to_string(q) + " divides a*p");
  }
  const std::uint64_t r = q % p;
  if (r != 1) return static_cast<ClassId>(r);
  return powmod(a % q, (q - 1) / p, q) == 1 ? kIdentityClass : kKernelClass;
}

namespace {

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

struct SegmentOutput {
  std::vector<std::uint32_t> primes;
  std::vector<std::uint8_t> classes;
};

}  // namespace

FrobeniusDataset sieve(const SieveConfig& config, unsigned workers) {
  require_admissible(config.a, config.p);
  if (config.x_max < 100) throw Error(ErrorCode::InvalidArgument, "x_max must be at least 100");
  if (config.x_max > kMaxSieveBound) {
    throw Error(ErrorCode::Overflow, "x_max exceeds " + std::to_string(kMaxSieveBound));
  }
  if (config.segment_size < 64) throw Error(ErrorCode::InvalidArgument, "segment_size must be at least 64");

  const std::uint64_t x_max = config.x_max;
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x_max)));
  while (root * root > x_max) --root;
  while ((root + 1) * (root + 1) <= x_max) ++root;
  const auto base = small_primes(root);

  const std::uint64_t seg = config.segment_size;
  const std::uint64_t num_segments = (x_max + 1 + seg - 1) / seg;
  std::vector<SegmentOutput> parts(num_segments);

  parallel_for(num_segments, workers, [&](std::size_t s) {
    const std::uint64_t lo = s * seg;
    const std::uint64_t hi = std::min(lo + seg, x_max + 1);  // [lo, hi)
    std::vector<char> is_prime_flag(hi - lo, 1);
    for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n) is_prime_flag[n - lo] = 0;
    for (std::uint64_t q : base) {
      if (q * q >= hi) break;
      std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
      for (std::uint64_t j = start; j < hi; j += q) is_prime_flag[j - lo] = 0;
    }
    auto& out = parts[s];
    for (std::uint64_t n = lo; n < hi; ++n) {
      if (!is_prime_flag[n - lo] || n == config.a || n == config.p) continue;
      out.primes.push_back(static_cast<std::uint32_t>(n));
      out.classes.push_back(static_cast<std::uint8_t>(frobenius_class(n, config.a, config.p)));
    }
  });

  FrobeniusDataset ds;
  ds.config = config;
  ds.counts.assign(config.p, 0);
  std::size_t total = 0;
  for (const auto& part : parts) total += part.primes.size();
  ds.primes.reserve(total);
  ds.classes.reserve(total);
  for (auto& part : parts) {
    ds.primes.insert(ds.primes.end(), part.primes.begin(), part.primes.end());
    ds.classes.insert(ds.classes.end(), part.classes.begin(), part.classes.end());
  }
  for (auto c : ds.classes) ++ds.counts[c];
  return ds;
}

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  const std::size_t chunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += chunk) {
    const auto n = static_cast<uInt>(std::min(chunk, bytes.size() - off));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off), n);
  }
  return static_cast<std::uint32_t>(crc);
}

std::string serialize(const FrobeniusDataset& dataset) {
  std::string out;
  out.reserve(dataset.size() * 12 + 128);
  out += "CHEBSET 1 a=" + std::to_string(dataset.config.a) + " p=" + std::to_string(dataset.config.p) +
         " xmax=" + std::to_string(dataset.config.x_max) + "\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out += std::to_string(dataset.primes[i]);
    out += ',';
    out += std::to_string(static_cast<unsigned>(dataset.classes[i]));
    out += '\n';
  }
  char trailer[64];
  std::snprintf(trailer, sizeof trailer, "#count=%zu crc32=%08x\n", dataset.size(), crc32_of(out));
  out += trailer;
  return out;
}

namespace {

std::uint64_t parse_u64(std::string_view s, ErrorCode code, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(code, std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  }
  return v;
}

std::string_view take_field(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key) {
    throw Error(ErrorCode::BadMagic, "expected '" + std::string(key) + "' in header");
  }
  return token.substr(key.size());
}

}  // namespace

FrobeniusDataset parse_dataset(std::string_view bytes) {
  constexpr std::string_view kMagic = "CHEBSET ";
  if (bytes.substr(0, kMagic.size()) != kMagic) throw Error(ErrorCode::BadMagic, "missing CHEBSET header");
  const auto header_end = bytes.find('\n');
  if (header_end == std::string_view::npos) throw Error(ErrorCode::TruncatedFile, "no complete header line");

  std::vector<std::string_view> tokens;
  std::string_view header = bytes.substr(kMagic.size(), header_end - kMagic.size());
  while (!header.empty()) {
    const auto sp = header.find(' ');
    tokens.push_back(header.substr(0, sp));
    header = sp == std::string_view::npos ? std::string_view{} : header.substr(sp + 1);
  }
  if (tokens.size() != 4) throw Error(ErrorCode::BadMagic, "malformed header");
  if (tokens[0] != "1") throw Error(ErrorCode::VersionMismatch, "unsupported version " + std::string(tokens[0]));

  FrobeniusDataset ds;
  ds.config.a = parse_u64(take_field(tokens[1], "a="), ErrorCode::BadMagic, "a");
  ds.config.p = parse_u64(take_field(tokens[2], "p="), ErrorCode::BadMagic, "p");
  ds.config.x_max = parse_u64(take_field(tokens[3], "xmax="), ErrorCode::BadMagic, "xmax");

  if (bytes.empty() || bytes.back() != '\n') throw Error(ErrorCode::TruncatedFile, "file does not end with a newline");
  const auto trailer_start = bytes.rfind('\n', bytes.size() - 2) + 1;
  if (trailer_start <= header_end || bytes.substr(trailer_start, 7) != "#count=") {
    throw Error(ErrorCode::TruncatedFile, "missing #count trailer");
  }
  const std::string_view trailer = bytes.substr(trailer_start, bytes.size() - 1 - trailer_start);
  const auto crc_pos = trailer.find(" crc32=");
  if (crc_pos == std::string_view::npos) throw Error(ErrorCode::TruncatedFile, "trailer lacks crc32");
  const std::uint64_t count = parse_u64(trailer.substr(7, crc_pos - 7), ErrorCode::TruncatedFile, "count");
  const std::string_view crc_hex = trailer.substr(crc_pos + 7);
  std::uint32_t stored_crc = 0;
  {
    auto [ptr, ec] = std::from_chars(crc_hex.data(), crc_hex.data() + crc_hex.size(), stored_crc, 16);
    if (ec != std::errc() || ptr != crc_hex.data() + crc_hex.size() || crc_hex.size() != 8) {
      throw Error(ErrorCode::TruncatedFile, "malformed crc32 field");
    }
  }
  if (crc32_of(bytes.substr(0, trailer_start)) != stored_crc) {
    throw Error(ErrorCode::ChecksumMismatch, "crc32 of contents does not match trailer");
  }
  if (ds.config.p < 3 || ds.config.p > 257) throw Error(ErrorCode::BadMagic, "p out of range in header");

  ds.primes.reserve(count);
  ds.classes.reserve(count);
  ds.counts.assign(ds.config.p, 0);
  std::string_view body = bytes.substr(header_end + 1, trailer_start - header_end - 1);
  std::uint64_t prev = 0;
  while (!body.empty()) {
    const auto nl = body.find('\n');
    const std::string_view line = body.substr(0, nl);
    body.remove_prefix(nl + 1);
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::InvalidArgument, "malformed record line");
    const auto q = parse_u64(line.substr(0, comma), ErrorCode::InvalidArgument, "prime");
    const auto c = parse_u64(line.substr(comma + 1), ErrorCode::InvalidArgument, "class id");
    if (q <= prev || q > ds.config.x_max || c >= ds.config.p) {
      throw Error(ErrorCode::InvalidArgument, "record out of order or out of range");
    }
    prev = q;
    ds.primes.push_back(static_cast<std::uint32_t>(q));
    ds.classes.push_back(static_cast<std::uint8_t>(c));
    ++ds.counts[c];
  }
  if (ds.primes.size() != count) {
    throw Error(ErrorCode::TruncatedFile, "trailer count " + std::to_string(count) + " but " +
                                              std::to_string(ds.primes.size()) + " records");
  }
  return ds;
}

void store(const FrobeniusDataset& dataset, const std::filesystem::path& path) {
  const std::string bytes = serialize(dataset);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

FrobeniusDataset load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

void expect_field(const FrobeniusDataset& dataset, std::uint64_t a, std::uint64_t p) {
  if (dataset.config.a != a || dataset.config.p != p) {
    throw Error(ErrorCode::ConfigMismatch,
                "dataset is for (a, p) = (" + std::to_string(dataset.config.a) + ", " +
                    std::to_string(dataset.config.p) + "), expected (" + std::to_string(a) + ", " +
                    std::to_string(p) + ")");
  }
}

}  // namespace cheb
