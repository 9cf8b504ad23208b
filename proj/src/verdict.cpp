#include "ztop/verdict.hpp"

#include <algorithm>

namespace ztop {

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::In:
      return "In";
    case Kind::Out:
      return "Out";
    case Kind::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

Verdict all_of(std::span<const Verdict> verdicts) {
  const Verdict* unknown = nullptr;
  unsigned bits = 0;
  for (const Verdict& v : verdicts) {
    bits = std::max(bits, v.precision_bits);
    if (v.is_out()) return v;
    if (v.is_unknown() && unknown == nullptr) unknown = &v;
  }
  if (unknown != nullptr) {
    Verdict out = *unknown;
    out.precision_bits = bits;
    return out;
  }
  Verdict in = Verdict::in();
  in.precision_bits = bits;
  return in;
}

}  // namespace ztop
