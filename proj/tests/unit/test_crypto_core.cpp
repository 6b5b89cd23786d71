#include <gtest/gtest.h>

#include <string>

#include "acas/crypto_core.hpp"
#include "acas/error.hpp"

using namespace acas;

namespace {

Octets ascii(const std::string& s) { return Octets(s.begin(), s.end()); }

template <std::size_t N>
std::array<std::uint8_t, N> arr(const std::string& hex) {
  Octets b = from_hex(hex);
  std::array<std::uint8_t, N> a{};
  std::copy(b.begin(), b.end(), a.begin());
  return a;
}

const std::string kSp80038aKey = "603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4";
const std::string kSp80038aIv = "000102030405060708090a0b0c0d0e0f";
const std::string kSp80038aPlain =
    "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e51"
    "30c81c46a35ce411e5fbc1191a0a52eff69f2445df4f9b17ad2b417be66c3710";

}  // namespace

TEST(Sha256, Fips180Vectors) {
  EXPECT_EQ(to_hex(sha256(ascii("abc"))),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(to_hex(sha256(ascii(""))),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(to_hex(sha256(ascii("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST(Sha256, MillionA) {
  EXPECT_EQ(to_hex(sha256(Octets(1'000'000, 'a'))),
            "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST(Aes256, Fips197Block) {
  auto key = arr<32>("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
  auto out = aes256_encrypt_block(key, arr<16>("00112233445566778899aabbccddeeff"));
  EXPECT_EQ(to_hex(out), "8ea2b7ca516745bfeafc49904b496089");
}

TEST(Aes256, CbcSp80038a) {
  auto key = arr<32>(kSp80038aKey);
  auto iv = arr<16>(kSp80038aIv);
  Octets ct = aes256_cbc_encrypt(key, iv, from_hex(kSp80038aPlain));
  EXPECT_EQ(to_hex(ct),
            "f58c4c04d6e5f1ba779eabfb5f7bfbd69cfc4e967edb808d679f777bc6702c7d"
            "39f23369a9d9bacfa530e26304231461b2eb05e2c39be9fcda6c19078c6a9d1b");
  EXPECT_EQ(to_hex(aes256_cbc_decrypt(key, iv, ct)), kSp80038aPlain);
}

TEST(Aes256, OfbSp80038a) {
  auto key = arr<32>(kSp80038aKey);
  auto iv = arr<16>(kSp80038aIv);
  Octets ct = aes256_ofb(key, iv, from_hex(kSp80038aPlain));
  EXPECT_EQ(to_hex(ct),
            "dc7e84bfda79164b7ecd8486985d38604febdc6740d20b3ac88f6ad82a4fb08d"
            "71ab47a086e86eedf39d1c5bba97c4080126141d67f37be8538f5a8be740e484");
  EXPECT_EQ(to_hex(aes256_ofb(key, iv, ct)), kSp80038aPlain);
}

TEST(Aes256, CbcRejectsPartialBlocks) {
  auto key = arr<32>(kSp80038aKey);
  auto iv = arr<16>(kSp80038aIv);
  try {
    aes256_cbc_encrypt(key, iv, Octets(17, 0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Structural);
  }
}

TEST(RecsKey, IsSha256OfKeyIgnoringGstTag) {
  OsnmaKey a(Octets(16, 0), 0);
  OsnmaKey b(Octets(16, 0), 0x12345678);
  EXPECT_EQ(to_hex(derive_recs_key(a).bytes),
            "374708fff7719dd5979ec875d56cd2286f6d3cf7ec317a3b25632aab28ec37bb");
  EXPECT_EQ(derive_recs_key(a), derive_recs_key(b));

  Octets flipped(16, 0);
  flipped[15] = 1;
  EXPECT_EQ(to_hex(derive_recs_key(OsnmaKey(flipped, 0)).bytes),
            "7c3ccd10bb7ec37b46d37926ae6274267f007a34aeaf15c882a715a7f3300529");
}

TEST(InitVector, PlaintextLayoutAndHash) {
  Block128 p = build_plaintext(0x12345678);
  EXPECT_EQ(to_hex(p), "12345678000000000000000000000000");
  EXPECT_EQ(to_hex(compute_iv(p).bytes), "9045fb7a50a1003484a8e5fc88f64caa");
  EXPECT_EQ(to_hex(compute_iv(build_plaintext(0)).bytes), "374708fff7719dd5979ec875d56cd228");
}

TEST(OffsetCyphertext, ZeroKeystream) {
  RecsKey k{arr<32>("374708fff7719dd5979ec875d56cd2286f6d3cf7ec317a3b25632aab28ec37bb")};
  InitVector iv{arr<16>("374708fff7719dd5979ec875d56cd228")};
  auto c = generate_offset_cyphertext(k, iv, 6);
  ASSERT_EQ(c.block_count(), 6u);
  EXPECT_EQ(c.slot_capacity(), 2u);
  std::string all;
  for (const auto& b : c.blocks()) all += to_hex(b);
  EXPECT_EQ(all,
            "b9b65f0ff5d32467bdc54c6bb9822b984ac216f3fffb74fe8df8825efaa98702"
            "44a5b9a3dbf68e79e7bd9c3c6a5752a4364ef4da42ff5aea8a625004b1313d67"
            "c67efc4c972e2f55eaeb4c8bd4f7a17ef91b5ab6dc9b538dc7dc9d9de1acb9e0");
}

TEST(OffsetFor, WorkedExample) {
  std::vector<Block128> blocks(3, Block128{});
  blocks[0][0] = 5;  // B for slot 1, SVID 1
  OffsetCyphertext c(blocks);
  RandomOffset d = offset_for(c, 1, 1, 3);
  EXPECT_EQ(d.units, 1u);
  EXPECT_EQ(d.milliseconds(), 8);
}

TEST(OffsetFor, ByteMapping) {
  // Byte value encodes (block, byte) so the chosen position is observable.
  std::vector<Block128> blocks(6);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < 16; ++i) blocks[b][i] = static_cast<std::uint8_t>(b * 16 + i);
  }
  OffsetCyphertext c(blocks);
  for (std::size_t slot = 1; slot <= 2; ++slot) {
    for (int svid = 1; svid <= 36; ++svid) {
      std::size_t block = 3 * (slot - 1) + static_cast<std::size_t>(svid - 1) / 16;
      std::size_t byte = static_cast<std::size_t>(svid - 1) % 16;
      EXPECT_EQ(c.offset_byte(slot, svid), blocks[block][byte]);
      EXPECT_EQ(offset_for(c, slot, svid, 255).units, blocks[block][byte]);
    }
  }
}

TEST(OffsetFor, RejectsBadIndices) {
  OffsetCyphertext c(std::vector<Block128>(3));
  EXPECT_THROW(offset_for(c, 2, 1, 3), Error);
  EXPECT_THROW(offset_for(c, 0, 1, 3), Error);
  EXPECT_THROW(offset_for(c, 1, 0, 3), Error);
  EXPECT_THROW(offset_for(c, 1, 37, 3), Error);
}

TEST(OffsetFor, ValuesStayInRange) {
  RecsKey k{};
  InitVector iv{};
  auto c = generate_offset_cyphertext(k, iv, 300);
  for (std::size_t slot = 1; slot <= c.slot_capacity(); ++slot) {
    for (int svid = 1; svid <= 36; ++svid) {
      EXPECT_LE(offset_for(c, slot, svid, 3).units, 3u);
    }
  }
}

TEST(RecsCipher, RoundTripAndChaining) {
  Octets ecs(640);
  for (std::size_t i = 0; i < ecs.size(); ++i) ecs[i] = static_cast<std::uint8_t>(i * 31 + 7);
  BitBlockSequence plain(ecs, SequenceRole::Ecs);
  RecsKey k{arr<32>(kSp80038aKey)};
  InitVector iv{arr<16>(kSp80038aIv)};
  auto recs = encrypt_ecs(plain, k, iv);
  EXPECT_EQ(recs.role(), SequenceRole::Recs);
  EXPECT_EQ(recs.bit_length(), plain.bit_length());
  EXPECT_NE(recs, plain);
  auto back = decrypt_recs(recs, k, iv);
  EXPECT_EQ(Octets(back.bytes().begin(), back.bytes().end()), ecs);
}

TEST(OsnmaKeyType, Invariants) {
  EXPECT_THROW(OsnmaKey(Octets{}, 0), Error);
  EXPECT_THROW(OsnmaKey(Octets(16, 0), 604800), Error);  // TOW field out of range
  EXPECT_NO_THROW(OsnmaKey(Octets(16, 0), 604799));
}
