#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "towerforge/bigint.hpp"

namespace towerforge {

struct CacheKey {
    std::uint64_t p = 0;
    unsigned e = 1;
    std::string modulus;  // "-" for prime fields
    std::string prime;    // canonical polynomial text
    unsigned m = 0;

    bool operator==(const CacheKey&) const = default;
};

struct CacheRecord {
    CacheKey key;
    std::string h_minus;
    std::string h_tilde_minus;
    std::string version;
};

// Append-only tab-separated store of computed relative class numbers.
// Columns: p, e, modulus, prime, m, h_minus, h_tilde_minus, version.
// Corrupted lines are skipped with a warning on stderr; lookups are by
// exact key (the version column is informational).
class ClassNumberCache {
   public:
    explicit ClassNumberCache(std::string path);

    std::optional<CacheRecord> get(const CacheKey& key) const;
    void put(const CacheRecord& record);  // IoError on write failure

    const std::string& path() const { return path_; }

   private:
    std::string path_;
};

}  // namespace towerforge
