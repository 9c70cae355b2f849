#include "qkdpp/protocol/authenticator.hpp"

#include "qkdpp/gf2/lfsr_hash.hpp"

namespace qkdpp {

BitString authenticate(KeyPool& pool, const std::string& step, std::size_t k, const BitString& msg) {
  const BitString key = pool.borrow(2 * k, step);
  const BitString pad = pool.consume(k, step);
  pool.give_back(key, step);
  const LfsrToeplitzSpec spec = derive_lfsr_spec(key, k, msg.size());
  return lfsr_toeplitz_tag(spec, msg) ^ pad;
}

bool verify_tag(KeyPool& pool, const std::string& step, std::size_t k, const BitString& msg, const BitString& tag) {
  const BitString expected = authenticate(pool, step, k, msg);
  return tag == expected;
}

}  // namespace qkdpp
