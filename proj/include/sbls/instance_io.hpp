#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sbls/tensor3.hpp"

namespace sbls {

inline constexpr int kSchemaVersion = 1;

/// Any problem reading an instance file. The message starts with the error
/// category: "malformed JSON", "dimension mismatch", "index out of range",
/// "duplicate COO entry", "unknown field" or "invalid field".
class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceFile {
  Instance instance;
  std::optional<Point> known_point;
  std::optional<std::string> label;
};

InstanceFile parse_instance(std::string_view text);

/// JSON text that parses back to the same doubles bit for bit. Sparse
/// tensors are written as 1-based COO entries, dense ones row-major.
std::string serialize_instance(const InstanceFile& file);

InstanceFile load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const InstanceFile& file);

}  // namespace sbls
