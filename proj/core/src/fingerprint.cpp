#include "bsq/fingerprint.hpp"

#include <fmt/format.h>

namespace bsq {

std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fingerprint(std::string_view text) {
  const auto* p = reinterpret_cast<const unsigned char*>(text.data());
  return fmt::format("{:016x}", fnv1a({p, text.size()}));
}

std::string fingerprint(const ComplexMatrix& m) {
  const std::uint64_t dims[2] = {m.rows(), m.cols()};
  std::uint64_t h = fnv1a({reinterpret_cast<const unsigned char*>(dims), sizeof dims});
  const auto data = m.data();
  h = fnv1a({reinterpret_cast<const unsigned char*>(data.data()), data.size_bytes()}, h);
  return fmt::format("{:016x}", h);
}

}  // namespace bsq
