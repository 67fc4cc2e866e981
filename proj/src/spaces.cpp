#include "hadamard/spaces.hpp"

#include "hadamard/error.hpp"
#include "text.hpp"

namespace hadamard {

SpaceHandle make_space(const std::string& descriptor) {
  const std::string_view s = text::trim(descriptor);
  if (s == "river") return std::make_shared<RiverPlane>();
  if (s == "circle") return std::make_shared<UnitCircle>();
  if (s == "disk") return std::make_shared<PoincareDisk>();
  if (text::starts_with(s, "disk:")) {
    auto margin = text::to_double(s.substr(5));
    if (!margin || !(*margin > 0.0 && *margin < 1.0)) {
      throw ParseError("disk margin must be a number in (0, 1)", "space");
    }
    return std::make_shared<PoincareDisk>(*margin);
  }
  if (text::starts_with(s, "euclidean:")) {
    auto dim = text::to_unsigned(s.substr(10));
    if (!dim || *dim == 0 || *dim > 1024) throw ParseError("euclidean dimension must be a positive integer", "space");
    return std::make_shared<EuclideanSpace>(static_cast<std::size_t>(*dim));
  }
  throw ParseError("unknown space '" + std::string(s) + "'", "space");
}

}  // namespace hadamard
