#pragma once

// On-disk cache of D'Arcais records.
//
//   DARCAIS-CACHE v1
//   1: 1
//   2: 3 1
//   3: 8 9 1
//   ...
//
// Record n lists a_0 .. a_{n-1} with n! P_n(x) / x = sum a_k x^k. Records
// start at 1 and increase without gaps.

#include "darcais/darcais.hpp"
#include "darcais/exactnum.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace darcais {

inline constexpr std::string_view kCacheHeader = "DARCAIS-CACHE v1";
inline constexpr const char* kCacheEnvVar = "DARCAIS_CACHE";

class CacheError : public std::runtime_error {
 public:
  CacheError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
};

inline std::string format_record(const DArcaisRecord& r) {
  std::string s = std::to_string(r.n) + ":";
  for (const auto& c : r.numer_coeffs) s += " " + c.get_str();
  return s;
}

inline DArcaisRecord parse_record(const std::string& line, const std::string& path, std::size_t lineno) {
  auto colon = line.find(':');
  if (colon == std::string::npos) throw CacheError(path, lineno, "missing ':' separator");
  DArcaisRecord r;
  try {
    BigInt n = parse_integer(line.substr(0, colon));
    if (n < 1 || !n.fits_uint_p()) throw CacheError(path, lineno, "bad record index");
    r.n = static_cast<unsigned>(n.get_ui());
    std::istringstream in(line.substr(colon + 1));
    std::string tok;
    while (in >> tok) r.numer_coeffs.push_back(parse_integer(tok));
    r.check_invariants();
  } catch (const CacheError&) {
    throw;
  } catch (const std::exception& e) {
    throw CacheError(path, lineno, e.what());
  }
  return r;
}

/// Reads and validates a cache file; a missing file is an empty cache.
inline std::vector<DArcaisRecord> read_cache(const std::string& path) {
  std::vector<DArcaisRecord> out;
  std::ifstream in(path);
  if (!in) {
    if (std::filesystem::exists(path)) throw CacheError(path, 0, "cannot open");
    return out;
  }
  std::string line;
  if (!std::getline(in, line)) return out;
  if (line != kCacheHeader) throw CacheError(path, 1, "bad header, expected '" + std::string(kCacheHeader) + "'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    DArcaisRecord r = parse_record(line, path, lineno);
    if (r.n != out.size() + 1) {
      throw CacheError(path, lineno, "record " + std::to_string(r.n) + " out of sequence, expected " +
                                         std::to_string(out.size() + 1));
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Writes records 1..records.size() atomically (temporary file + rename).
inline void write_cache(const std::string& path, const std::vector<DArcaisRecord>& records) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CacheError(path, 0, "cannot write");
    out << kCacheHeader << '\n';
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].n != i + 1) throw ConsistencyError("cache records must be 1..N in order");
      out << format_record(records[i]) << '\n';
    }
    if (!out) throw CacheError(path, 0, "write failed");
  }
  std::filesystem::rename(tmp, path);
}

/// Loads the cache into `table` (which must be fresh) and returns the number
/// of records loaded.
inline unsigned load_cache_into(const std::string& path, DArcaisTable& table) {
  auto records = read_cache(path);
  for (const auto& r : records) table.seed(r);
  return static_cast<unsigned>(records.size());
}

/// Rewrites the cache so it covers 1..n, if it does not already.
inline void extend_cache(const std::string& path, DArcaisTable& table, unsigned n, unsigned already) {
  if (n <= already) return;
  std::vector<DArcaisRecord> records;
  records.reserve(n);
  for (unsigned m = 1; m <= n; ++m) records.push_back(table.record(m));
  write_cache(path, records);
}

inline std::string default_cache_path() {
  const char* env = std::getenv(kCacheEnvVar);
  return env ? std::string(env) : std::string();
}

}  // namespace darcais
