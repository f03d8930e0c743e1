#pragma once

#include <cstddef>
#include <string_view>

namespace ktf::detail {

// Catalog data files compiled into the library (generated at build time).
struct EmbeddedFile {
  std::string_view name;
  std::string_view content;
};

extern const EmbeddedFile kEmbeddedFiles[];
extern const std::size_t kEmbeddedFileCount;

}  // namespace ktf::detail
