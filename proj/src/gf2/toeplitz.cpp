#include "qkdpp/gf2/toeplitz.hpp"

#include <string>

#include "qkdpp/errors.hpp"
#include "qkdpp/gf2/clmul.hpp"

namespace qkdpp {

void ToeplitzSpec::validate() const {
  if (diag.size() != diag_length()) {
    throw DimensionError("ToeplitzSpec: diag has " + std::to_string(diag.size()) + " bits, expected " +
                         std::to_string(diag_length()) + " for a " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrix");
  }
}

BitString toeplitz_apply(const ToeplitzSpec& spec, const BitString& x) {
  spec.validate();
  if (x.size() != spec.cols) {
    throw DimensionError("toeplitz_apply: input has " + std::to_string(x.size()) + " bits, matrix has " +
                         std::to_string(spec.cols) + " columns");
  }
  if (spec.rows == 0) return BitString{};
  if (spec.cols == 0) return BitString(spec.rows);

  std::vector<std::uint64_t> prod = gf2::clmul(spec.diag.words(), x.words());
  const std::size_t prod_bits = prod.size() * BitString::kWordBits;
  const BitString full = BitString::from_words(std::move(prod), prod_bits);
  return full.slice(spec.cols - 1, spec.rows);
}

BitString one_time_pad(const BitString& data, const BitString& pad) {
  if (data.size() != pad.size()) {
    throw DimensionError("one_time_pad: data has " + std::to_string(data.size()) + " bits, pad has " +
                         std::to_string(pad.size()));
  }
  return data ^ pad;
}

}  // namespace qkdpp
