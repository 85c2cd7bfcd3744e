#pragma once

#include "bef/backend.hpp"

namespace bef {

enum class Direction { Ascending, Descending };

struct CompareResult {
    CipherBit gt;   // 1 iff a > b
    CipherBit lte;  // 1 iff a <= b
};

struct OrderedPair {
    BitWord low;
    BitWord high;
};

struct KeyedPair {
    BitWord key;
    BitWord payload;
};

// Raw circuit constructions. These touch only the gate counters, never the
// blind-op counters; the blind_* wrappers below add the op accounting.
namespace circuits {

CompareResult compare(Backend& backend, const BitWord& a, const BitWord& b);
CipherBit mux_bit(Backend& backend, const CipherBit& sel, const CipherBit& then_v,
                  const CipherBit& else_v);
BitWord mux_word(Backend& backend, const CipherBit& sel, const BitWord& then_v,
                 const BitWord& else_v);
// Ripple-carry; all arithmetic is modulo 2^width.
BitWord add(Backend& backend, const BitWord& a, const BitWord& b);
BitWord sub(Backend& backend, const BitWord& a, const BitWord& b);
BitWord inc_if(Backend& backend, const BitWord& a, const CipherBit& carry_in);
BitWord dec(Backend& backend, const BitWord& a);
BitWord popcount(Backend& backend, std::span<const CipherBit> bits, std::size_t width);
OrderedPair order(Backend& backend, const BitWord& a, const BitWord& b, Direction direction);

}  // namespace circuits

// MSB-to-LSB ladder comparison; exactly one of gt/lte decrypts to 1.
CompareResult blind_compare(Backend& backend, const BitWord& a, const BitWord& b);

CipherBit blind_select_bit(Backend& backend, const CipherBit& cond, const CipherBit& then_v,
                           const CipherBit& else_v);
BitWord blind_select_word(Backend& backend, const CipherBit& cond, const BitWord& then_v,
                          const BitWord& else_v);

// Compare-and-swap of a pair. Equal values never swap.
OrderedPair blind_order(Backend& backend, const BitWord& a, const BitWord& b,
                        Direction direction = Direction::Ascending);

// As blind_order, keyed: payloads travel with their keys under the same
// select bit.
std::pair<KeyedPair, KeyedPair> blind_order_keyed(Backend& backend, const KeyedPair& a,
                                                  const KeyedPair& b,
                                                  Direction direction = Direction::Ascending);

BitWord blind_add(Backend& backend, const BitWord& a, const BitWord& b);
BitWord blind_inc_if(Backend& backend, const BitWord& a, const CipherBit& cond);
BitWord blind_dec(Backend& backend, const BitWord& a);
BitWord blind_popcount(Backend& backend, std::span<const CipherBit> bits, std::size_t width);

}  // namespace bef
