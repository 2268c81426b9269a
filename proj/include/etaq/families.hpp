#pragma once
// Coefficient oracles for the shipped eta-quotient families.
//
// A CoefficientOracle serves a(n) mod m, where a(n) is the coefficient of q^n
// in the family's eta-quotient expansion (so negative n occur for quotients
// with a pole at infinity).  Table-backed oracles are built once,
// single-threaded, and are read-only afterwards, so concurrent fetches are
// safe.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/stat.h>
#include <unistd.h>

#include "etaq/dense_eta.hpp"
#include "etaq/eta_quotient.hpp"
#include "etaq/numtheory.hpp"

namespace etaq {

// Oracle failures (index out of reach, subprocess trouble) are distinct from
// math verdicts; they propagate as this exception type.
struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class CoefficientOracle {
 public:
  virtual ~CoefficientOracle() = default;
  virtual u64 modulus() const = 0;
  virtual i64 max_index() const = 0;
  // Residue of a(n) mod modulus(); 0 outside the support; throws OracleError
  // above max_index().
  virtual u64 fetch(i64 n) const = 0;
};

// The four paper families plus a catch-all for arbitrary eta-quotients.
// index offset E = sum r_delta delta / 24: a(n) is supported on n >= E, and
// the dense table stores a(E), a(E+1), ...
struct Family {
  std::string name;  // partition | overpartition | color24 | core3 | custom-eta
  EtaQuotient X;
  i64 offset = 0;
};

inline Family make_family(const std::string& name, const std::string& custom_eta = "") {
  std::string text;
  if (name == "partition") text = "24:-1";
  else if (name == "overpartition") text = "1:-2,2:1";
  else if (name == "color24") text = "1:-24";
  else if (name == "core3") text = "1:-3,3:9";
  else if (name == "custom-eta") {
    if (custom_eta.empty())
      throw std::invalid_argument("custom-eta family requires an eta-quotient");
    text = custom_eta;
  } else {
    throw std::invalid_argument("unknown family: " + name);
  }
  Family f;
  f.name = name;
  f.X = parse_eta_quotient(text);
  i64 s = 0;
  for (auto [d, r] : f.X.factors) s += d * r;
  f.offset = s / 24;
  return f;
}

// p(0..limit) mod m by the pentagonal-number recurrence
// p(n) = sum_k (-1)^{k+1} (p(n - k(3k-1)/2) + p(n - k(3k+1)/2)).
inline std::vector<u64> partition_table_mod(i64 limit, u64 m) {
  if (limit < 0 || m < 2) throw std::invalid_argument("partition_table_mod: bad arguments");
  std::vector<u64> p((size_t)limit + 1);
  p[0] = 1 % m;
  for (i64 n = 1; n <= limit; ++n) {
    u64 acc = 0;  // stays < ~sqrt(n) * 2m, far below 2^64 for sane m
    for (i64 k = 1;; ++k) {
      i64 g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      i64 g2 = k * (3 * k + 1) / 2;
      u64 t = p[(size_t)(n - g1)] + (g2 <= n ? p[(size_t)(n - g2)] : 0);
      acc += (k & 1) ? t : 2 * m - t;
    }
    p[(size_t)n] = acc % m;
  }
  return p;
}

namespace detail {

template <typename T>
class DenseTableOracle final : public CoefficientOracle {
 public:
  DenseTableOracle(u64 m, i64 offset, std::vector<T> table)
      : m_(m), offset_(offset), table_(std::move(table)) {}
  u64 modulus() const override { return m_; }
  i64 max_index() const override { return offset_ + (i64)table_.size() - 1; }
  u64 fetch(i64 n) const override {
    i64 t = n - offset_;
    if (t < 0) return 0;
    if (t >= (i64)table_.size())
      throw OracleError("coefficient index " + std::to_string(n) + " beyond table (max " +
                        std::to_string(max_index()) + ")");
    return table_[(size_t)t];
  }

 private:
  u64 m_;
  i64 offset_;
  std::vector<T> table_;
};

// a(n) = p((n+1)/24) on n = -1 mod 24, else 0.
class PartitionOracle final : public CoefficientOracle {
 public:
  PartitionOracle(u64 m, i64 max_index)
      : m_(m), max_index_(max_index), p_(partition_table_mod((max_index + 1) / 24, m)) {}
  u64 modulus() const override { return m_; }
  i64 max_index() const override { return max_index_; }
  u64 fetch(i64 n) const override {
    if (n > max_index_)
      throw OracleError("coefficient index " + std::to_string(n) + " beyond table (max " +
                        std::to_string(max_index_) + ")");
    i64 t = n + 1;
    if (t < 0 || t % 24 != 0) return 0;
    return p_[(size_t)(t / 24)];
  }

 private:
  u64 m_;
  i64 max_index_;
  std::vector<u64> p_;
};

// Large dense tables are expensive to rebuild (hours for 1e9+ entries), so
// byte tables above this size are cached on disk, keyed by family, modulus
// and length.  Set ETAQ_TABLE_CACHE to change the directory, or to the empty
// string to disable caching.
inline constexpr i64 kTableCacheThreshold = 100000000;

inline std::string table_cache_dir() {
  const char* env = std::getenv("ETAQ_TABLE_CACHE");
  return env ? std::string(env) : std::string("table-cache");
}

inline bool load_cached_table(const std::string& path, std::vector<uint8_t>& table) {
  std::FILE* in = std::fopen(path.c_str(), "rb");
  if (!in) return false;
  size_t got = std::fread(table.data(), 1, table.size(), in);
  bool at_end = std::fgetc(in) == EOF;
  std::fclose(in);
  return got == table.size() && at_end;
}

inline void store_cached_table(const std::string& dir, const std::string& path,
                               const std::vector<uint8_t>& table) {
  ::mkdir(dir.c_str(), 0755);  // best effort; may already exist
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  std::FILE* out = std::fopen(tmp.c_str(), "wb");
  if (!out) return;
  bool ok = std::fwrite(table.data(), 1, table.size(), out) == table.size();
  ok = std::fclose(out) == 0 && ok;
  if (ok) std::rename(tmp.c_str(), path.c_str());  // atomic against concurrent writers
  else std::remove(tmp.c_str());
}

template <typename T>
std::unique_ptr<CoefficientOracle> build_dense(const Family& f, u64 m, i64 max_index) {
  i64 len = max_index - f.offset + 1;
  if (len <= 0) len = 1;
  std::vector<T> table;
  std::string cache_path;
  if constexpr (sizeof(T) == 1) {
    std::string dir = table_cache_dir();
    if (!dir.empty() && len >= kTableCacheThreshold) {
      cache_path = dir + "/" + f.name + "-m" + std::to_string(m) + "-len" + std::to_string(len) +
                   ".bin";
      table.assign((size_t)len, T(0));
      if (load_cached_table(cache_path, table))
        return std::make_unique<DenseTableOracle<T>>(m, f.offset, std::move(table));
      table.clear();
      table.shrink_to_fit();
    }
  }
  if (f.name == "overpartition") {
    // 1/phi(-q): one division pass instead of three Euler-product passes.
    table.assign((size_t)len, T(0));
    table[0] = T(1 % m);
    dense::divide_by_series(table, dense::theta_neg_terms(len), (uint32_t)m);
  } else {
    table = dense::dense_eta_table<T>(f.X, (uint32_t)m, len);
  }
  if constexpr (sizeof(T) == 1) {
    if (!cache_path.empty()) store_cached_table(table_cache_dir(), cache_path, table);
  }
  return std::make_unique<DenseTableOracle<T>>(m, f.offset, std::move(table));
}

}  // namespace detail

// Builds the series-backed oracle covering indices up to max_index.
inline std::unique_ptr<CoefficientOracle> family_oracle(const Family& f, u64 m, i64 max_index) {
  if (m < 2) throw std::invalid_argument("family_oracle: modulus must be >= 2");
  if (f.name == "partition") return std::make_unique<detail::PartitionOracle>(m, max_index);
  if (m <= 128) return detail::build_dense<uint8_t>(f, m, max_index);
  if (m <= (u64(1) << 15)) return detail::build_dense<uint16_t>(f, m, max_index);
  if (m <= (u64(1) << 31)) return detail::build_dense<uint32_t>(f, m, max_index);
  throw std::invalid_argument("family_oracle: modulus too large for dense tables");
}

}  // namespace etaq
