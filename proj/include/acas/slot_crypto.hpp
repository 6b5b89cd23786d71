#pragma once

// Per-slot key material shared by the RECS generator and the receiver.

#include "acas/crypto_core.hpp"
#include "acas/recs_format.hpp"

namespace acas {

// IV applicable to every slot of one RECS file, from the GST tag of the key
// of the block containing the file start.
InitVector file_iv(const OsnmaKey& iv_key);

struct SlotCrypto {
  SlotLocation location;
  RecsKey key;          // K' of block j + SLRECS
  InitVector iv;
  RandomOffset offset;  // delay of this slot for the header's SVID
};

// slot_key must be the chain key of location.key_block.
SlotCrypto derive_slot_crypto(const RecsFileHeader& header, const SlotLocation& location,
                              const InitVector& iv, const OsnmaKey& slot_key);

}  // namespace acas
