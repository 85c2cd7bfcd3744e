#include "bef/blind_core.hpp"

namespace bef {

namespace {

void require_equal_widths(const BitWord& a, const BitWord& b, const char* what) {
    if (a.width() == 0 || b.width() == 0) {
        throw ValidationError(std::string(what) + ": zero-width word");
    }
    if (a.width() != b.width()) {
        throw ValidationError(std::string(what) + ": width mismatch (" +
                              std::to_string(a.width()) + " vs " + std::to_string(b.width()) +
                              ")");
    }
}

}  // namespace

namespace circuits {

CompareResult compare(Backend& backend, const BitWord& a, const BitWord& b) {
    // MSB-to-LSB ladder: gt accumulates (prefix-equal AND a_i AND NOT b_i),
    // eq accumulates bitwise equality. Uniform 7 gates per bit keeps the
    // gate count exactly affine in the width.
    CipherBit gt = backend.trivial_bit(false);
    CipherBit eq = backend.trivial_bit(true);
    for (std::size_t i = a.width(); i-- > 0;) {
        const CipherBit nb = backend.not_(b.bits[i]);
        const CipherBit a_gt_b = backend.and_(a.bits[i], nb);
        gt = backend.or_(gt, backend.and_(eq, a_gt_b));
        const CipherBit diff = backend.xor_(a.bits[i], b.bits[i]);
        eq = backend.and_(eq, backend.not_(diff));
    }
    return CompareResult{gt, backend.not_(gt)};
}

CipherBit mux_bit(Backend& backend, const CipherBit& sel, const CipherBit& then_v,
                  const CipherBit& else_v) {
    return backend.mux(sel, then_v, else_v);
}

BitWord mux_word(Backend& backend, const CipherBit& sel, const BitWord& then_v,
                 const BitWord& else_v) {
    BitWord out;
    out.bits.reserve(then_v.width());
    for (std::size_t i = 0; i < then_v.width(); ++i) {
        out.bits.push_back(backend.mux(sel, then_v.bits[i], else_v.bits[i]));
    }
    return out;
}

BitWord add(Backend& backend, const BitWord& a, const BitWord& b) {
    BitWord out;
    out.bits.reserve(a.width());
    CipherBit carry = backend.trivial_bit(false);
    for (std::size_t i = 0; i < a.width(); ++i) {
        const CipherBit axb = backend.xor_(a.bits[i], b.bits[i]);
        out.bits.push_back(backend.xor_(axb, carry));
        carry = backend.or_(backend.and_(a.bits[i], b.bits[i]), backend.and_(axb, carry));
    }
    return out;
}

BitWord sub(Backend& backend, const BitWord& a, const BitWord& b) {
    // a + ~b + 1
    BitWord out;
    out.bits.reserve(a.width());
    CipherBit carry = backend.trivial_bit(true);
    for (std::size_t i = 0; i < a.width(); ++i) {
        const CipherBit nb = backend.not_(b.bits[i]);
        const CipherBit axb = backend.xor_(a.bits[i], nb);
        out.bits.push_back(backend.xor_(axb, carry));
        carry = backend.or_(backend.and_(a.bits[i], nb), backend.and_(axb, carry));
    }
    return out;
}

BitWord inc_if(Backend& backend, const BitWord& a, const CipherBit& carry_in) {
    BitWord out;
    out.bits.reserve(a.width());
    CipherBit carry = carry_in;
    for (std::size_t i = 0; i < a.width(); ++i) {
        out.bits.push_back(backend.xor_(a.bits[i], carry));
        carry = backend.and_(a.bits[i], carry);
    }
    return out;
}

BitWord dec(Backend& backend, const BitWord& a) {
    BitWord out;
    out.bits.reserve(a.width());
    CipherBit borrow = backend.trivial_bit(true);
    for (std::size_t i = 0; i < a.width(); ++i) {
        out.bits.push_back(backend.xor_(a.bits[i], borrow));
        borrow = backend.and_(backend.not_(a.bits[i]), borrow);
    }
    return out;
}

BitWord popcount(Backend& backend, std::span<const CipherBit> bits, std::size_t width) {
    std::size_t needed = 0;
    while ((std::size_t{1} << needed) < bits.size() + 1) ++needed;
    if (width < std::max<std::size_t>(needed, 1)) {
        throw ValidationError("popcount width " + std::to_string(width) +
                              " cannot hold counts up to " + std::to_string(bits.size()));
    }
    BitWord acc = trivial_word(backend, 0, width);
    for (const CipherBit& bit : bits) {
        acc = inc_if(backend, acc, bit);
    }
    return acc;
}

OrderedPair order(Backend& backend, const BitWord& a, const BitWord& b, Direction direction) {
    // Swap only on strict inequality, so equal values (and equal sort keys)
    // keep their original order. Both outputs come from the saved originals.
    const CipherBit swap = direction == Direction::Ascending ? compare(backend, a, b).gt
                                                             : compare(backend, b, a).gt;
    return OrderedPair{mux_word(backend, swap, b, a), mux_word(backend, swap, a, b)};
}

}  // namespace circuits

CompareResult blind_compare(Backend& backend, const BitWord& a, const BitWord& b) {
    require_equal_widths(a, b, "blind_compare");
    backend.stats().record_comparison();
    return circuits::compare(backend, a, b);
}

CipherBit blind_select_bit(Backend& backend, const CipherBit& cond, const CipherBit& then_v,
                           const CipherBit& else_v) {
    backend.stats().record_selection();
    return circuits::mux_bit(backend, cond, then_v, else_v);
}

BitWord blind_select_word(Backend& backend, const CipherBit& cond, const BitWord& then_v,
                          const BitWord& else_v) {
    require_equal_widths(then_v, else_v, "blind_select_word");
    backend.stats().record_selection();
    return circuits::mux_word(backend, cond, then_v, else_v);
}

OrderedPair blind_order(Backend& backend, const BitWord& a, const BitWord& b,
                        Direction direction) {
    require_equal_widths(a, b, "blind_order");
    backend.stats().record_ordering();
    return circuits::order(backend, a, b, direction);
}

std::pair<KeyedPair, KeyedPair> blind_order_keyed(Backend& backend, const KeyedPair& a,
                                                  const KeyedPair& b, Direction direction) {
    require_equal_widths(a.key, b.key, "blind_order_keyed keys");
    require_equal_widths(a.payload, b.payload, "blind_order_keyed payloads");
    backend.stats().record_ordering();
    const CipherBit swap = direction == Direction::Ascending
                               ? circuits::compare(backend, a.key, b.key).gt
                               : circuits::compare(backend, b.key, a.key).gt;
    KeyedPair first{circuits::mux_word(backend, swap, b.key, a.key),
                    circuits::mux_word(backend, swap, b.payload, a.payload)};
    KeyedPair second{circuits::mux_word(backend, swap, a.key, b.key),
                     circuits::mux_word(backend, swap, a.payload, b.payload)};
    return {std::move(first), std::move(second)};
}

BitWord blind_add(Backend& backend, const BitWord& a, const BitWord& b) {
    require_equal_widths(a, b, "blind_add");
    return circuits::add(backend, a, b);
}

BitWord blind_inc_if(Backend& backend, const BitWord& a, const CipherBit& cond) {
    if (a.width() == 0) throw ValidationError("blind_inc_if: zero-width word");
    return circuits::inc_if(backend, a, cond);
}

BitWord blind_dec(Backend& backend, const BitWord& a) {
    if (a.width() == 0) throw ValidationError("blind_dec: zero-width word");
    return circuits::dec(backend, a);
}

BitWord blind_popcount(Backend& backend, std::span<const CipherBit> bits, std::size_t width) {
    return circuits::popcount(backend, bits, width);
}

}  // namespace bef
