#pragma once

#include <string>
#include <utility>
#include <vector>

namespace limca {

// Line-oriented `key: value` text. Blank lines and lines starting with '#'
// are skipped; keys may repeat.
class KeyValues {
public:
    static KeyValues parse(const std::string& text);
    static KeyValues load(const std::string& path);

    void add(std::string key, std::string value);
    bool has(const std::string& key) const;
    // Throws DomainError if absent or repeated.
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    long long get_int(const std::string& key) const;
    std::vector<std::string> get_all(const std::string& key) const;
    std::string str() const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
// Directory part of a path ("." when none), used to resolve file references.
std::string dir_of(const std::string& path);
std::string join_path(const std::string& dir, const std::string& rel);

}  // namespace limca
