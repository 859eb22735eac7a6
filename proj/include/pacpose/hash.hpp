#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

namespace pac {

// FNV-1a, used to fingerprint input bundles inside run reports.
std::uint64_t fnv1a64(const void* data, std::size_t size,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

std::uint64_t hash_file(const std::filesystem::path& path, std::uint64_t seed);

// Hash of a bundle directory: its well-known files in a fixed order, each
// prefixed by its name. Returns "fnv1a64:<hex>".
std::string bundle_content_hash(const std::filesystem::path& dir);

}  // namespace pac
