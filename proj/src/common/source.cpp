#include "common/source.hpp"

namespace eff {

std::string to_string(const Position& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

}  // namespace eff
