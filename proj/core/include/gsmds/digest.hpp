#pragma once
// SHA-256, used for content-addressed response caching and dataset digests.

#include <cstdint>
#include <string>
#include <string_view>

namespace gsmds {

std::string sha256_hex(std::string_view data);

}  // namespace gsmds
