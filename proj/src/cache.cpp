#include "towerforge/cache.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "towerforge/errors.hpp"

namespace towerforge {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == '\t') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<CacheRecord> parse_line(const std::string& line) {
    const auto fields = split_tabs(line);
    if (fields.size() != 8) return std::nullopt;
    CacheRecord r;
    try {
        r.key.p = std::stoull(fields[0]);
        r.key.e = static_cast<unsigned>(std::stoul(fields[1]));
        r.key.modulus = fields[2];
        r.key.prime = fields[3];
        r.key.m = static_cast<unsigned>(std::stoul(fields[4]));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    r.h_minus = fields[5];
    r.h_tilde_minus = fields[6];
    r.version = fields[7];
    if (r.key.prime.empty() || r.h_minus.empty() || r.h_tilde_minus.empty()) return std::nullopt;
    for (const std::string* s : {&r.h_minus, &r.h_tilde_minus})
        for (char ch : *s)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
    return r;
}

}  // namespace

ClassNumberCache::ClassNumberCache(std::string path) : path_(std::move(path)) {}

std::optional<CacheRecord> ClassNumberCache::get(const CacheKey& key) const {
    std::ifstream in(path_);
    if (!in) return std::nullopt;  // missing cache file is an empty cache
    std::string line;
    std::optional<CacheRecord> hit;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto rec = parse_line(line);
        if (!rec) {
            std::cerr << "warning: skipping corrupted cache line " << lineno << " in " << path_ << "\n";
            continue;
        }
        if (rec->key == key) hit = rec;  // last write wins
    }
    return hit;
}

void ClassNumberCache::put(const CacheRecord& record) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot open cache file for writing: " + path_);
    out << record.key.p << '\t' << record.key.e << '\t' << record.key.modulus << '\t' << record.key.prime << '\t'
        << record.key.m << '\t' << record.h_minus << '\t' << record.h_tilde_minus << '\t' << record.version << '\n';
    if (!out) throw IoError("cache write failed: " + path_);
}

}  // namespace towerforge
