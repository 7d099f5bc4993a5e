#pragma once

#include <cstdint>
#include <vector>

namespace padyn {

struct FieldData {
  std::uint64_t p = 0;
  unsigned f = 1;
  unsigned N = 1;
  std::vector<std::uint64_t> h;       // monic, size f + 1
  std::vector<std::uint64_t> powers;  // p^0 .. p^N
  std::uint64_t q = 0;
};

}  // namespace padyn
