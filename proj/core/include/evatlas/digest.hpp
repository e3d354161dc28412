#pragma once

#include <string>
#include <string_view>

namespace evatlas {

// Lowercase hex SHA-256 of the given bytes. Used for the atlas build digest;
// must be stable across platforms and worker counts.
std::string sha256_hex(std::string_view bytes);

} // namespace evatlas
