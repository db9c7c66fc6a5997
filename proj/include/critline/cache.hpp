#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "critline/forms.hpp"
#include "critline/valuelist.hpp"

namespace critline {

// Value-list cache file, text:
//   EPSVL1 <form_digest> <X> <entry_count>
//   <lambda> <a>        (one pair per line, lambda at 17 significant digits)
void write_value_list_file(const std::filesystem::path& path, const ValueList& vl);

// Loads and validates; expected_digest mismatch or structural damage is an
// io_failure carrying a digest diagnostic.
ValueList load_value_list_file(const std::filesystem::path& path,
                               const std::string& expected_digest);

std::filesystem::path value_list_path(const std::filesystem::path& dir,
                                      const std::string& digest);

struct CacheFileReport {
    std::string path;
    std::string status;  // "built" | "extended" | "up_to_date"
    double cutoff = 0.0;
    std::int64_t entries = 0;
    std::int64_t points = 0;
};

struct CacheReport {
    CacheFileReport primal;
    CacheFileReport dual;
};

// Builds or extends the cache files for the form and its dual so the AFE
// evaluator can reach X_target (the dual file is built to
// max(X_target, X_target / D), covering the discriminant-normalized dual
// sums). Idempotent; digest-keyed filenames; concurrent builders are
// excluded by an atomically created lock sentinel, and stale locks older
// than one hour are reclaimed with a warning on stderr.
CacheReport cache_manage(const std::filesystem::path& dir, const GramForm& q, double x_target);

// In-memory front for value lists, optionally backed by a cache directory.
class ValueListCache {
  public:
    explicit ValueListCache(std::filesystem::path dir = {});

    // Returns a list for q with cutoff >= min_cutoff, loading from or
    // writing to the backing directory when one is set. References stay
    // valid for the cache's lifetime.
    const ValueList& get(const GramForm& q, double min_cutoff);

  private:
    std::filesystem::path dir_;
    std::mutex mutex_;
    std::map<std::string, std::unique_ptr<ValueList>> lists_;
};

} // namespace critline
