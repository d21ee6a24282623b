#pragma once

#include <string>
#include <string_view>

namespace simbias {

// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

// First 16 hex digits of the SHA-256; used as a short provenance tag.
std::string short_digest(std::string_view data);

// SHA-256 of a file's bytes. Throws simbias::Error if unreadable.
std::string file_sha256_hex(const std::string& path);

}  // namespace simbias
