#include "acas/slot_crypto.hpp"

namespace acas {

InitVector file_iv(const OsnmaKey& iv_key) { return compute_iv(build_plaintext(iv_key.gst_sf())); }

SlotCrypto derive_slot_crypto(const RecsFileHeader& header, const SlotLocation& location,
                              const InitVector& iv, const OsnmaKey& slot_key) {
  SlotCrypto out{location, derive_recs_key(slot_key), iv, {}};
  OffsetCyphertext c = generate_offset_cyphertext(out.key, iv, offset_cyphertext_blocks(header));
  out.offset = offset_for(c, location.position, header.svid, header.dtau_max);
  return out;
}

}  // namespace acas
