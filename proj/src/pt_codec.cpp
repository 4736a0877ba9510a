// Copyright 2026 the ptflow authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ptflow/pt_codec.hpp"

#include <bit>
#include <sstream>

namespace ptflow {

namespace {

// Packs branch outcomes (oldest first) into the TNT bit layout: stop bit at
// position count+1, oldest branch directly below it, bit 0 left clear.
uint64_t pack_tnt_bits(const std::vector<bool>& branches) {
  size_t count = branches.size();
  uint64_t value = uint64_t{1} << (count + 1);
  for (size_t i = 0; i < count; ++i)
    if (branches[i]) value |= uint64_t{1} << (count - i);
  return value;
}

// Unpacks the layout above. The scan region excludes bit 0; the most
// significant set bit is the stop bit. Returns nullopt when the region is
// empty (no stop bit: not a TNT payload at all).
std::optional<std::vector<bool>> unpack_tnt_bits(uint64_t value) {
  if ((value >> 1) == 0) return std::nullopt;
  int stop = std::bit_width(value) - 1;
  std::vector<bool> branches;
  branches.reserve(static_cast<size_t>(stop - 1));
  for (int bit = stop - 1; bit >= 1; --bit)
    branches.push_back((value >> bit) & 1);
  return branches;
}

uint64_t payload_le_value(std::span<const uint8_t> payload) {
  uint64_t v = 0;
  for (size_t i = 0; i < payload.size(); ++i)
    v |= static_cast<uint64_t>(payload[i]) << (8 * i);
  return v;
}

bool is_short_tnt_byte(uint8_t b) {
  // header bit clear and at least one bit above the would-be stop at bit 1
  return (b & 0x01) == 0 && (b & 0xfc) != 0;
}

uint64_t sign_extend_48(uint64_t v) {
  return (v & (uint64_t{1} << 47)) ? (v | 0xffff000000000000ULL)
                                   : (v & 0x0000ffffffffffffULL);
}

}  // namespace

size_t tip_payload_length(IpBytesMode mode) {
  switch (mode) {
    case IpBytesMode::kSuppressed:
      return 0;
    case IpBytesMode::kUpdate16:
      return 2;
    case IpBytesMode::kUpdate32:
      return 4;
    case IpBytesMode::kSignExt48:
    case IpBytesMode::kUpdate48:
      return 6;
    case IpBytesMode::kFull64:
      return 8;
  }
  throw InvalidPacket("unknown IP bytes mode");
}

const char* ip_bytes_mode_name(IpBytesMode mode) {
  switch (mode) {
    case IpBytesMode::kSuppressed:
      return "suppressed";
    case IpBytesMode::kUpdate16:
      return "update16";
    case IpBytesMode::kUpdate32:
      return "update32";
    case IpBytesMode::kSignExt48:
      return "signext48";
    case IpBytesMode::kUpdate48:
      return "update48";
    case IpBytesMode::kFull64:
      return "full64";
  }
  return "?";
}

ShortTnt ShortTnt::from_raw(uint8_t raw) {
  if ((raw & 0x01) != 0)
    throw InvalidPacket("short TNT header bit set");
  if ((raw & 0xfc) == 0)
    throw EmptyTnt("short TNT carries no branch bits");
  ShortTnt p;
  p.raw_ = raw;
  return p;
}

ShortTnt ShortTnt::from_branches(const std::vector<bool>& branches) {
  if (branches.empty() || branches.size() > 6)
    throw InvalidPacket("short TNT holds 1 to 6 branches, got " +
                        std::to_string(branches.size()));
  ShortTnt p;
  p.raw_ = static_cast<uint8_t>(pack_tnt_bits(branches));
  return p;
}

std::vector<bool> ShortTnt::branches() const { return extract_tnt_bits(*this); }

LongTnt LongTnt::from_payload(std::span<const uint8_t> payload) {
  if (payload.empty() || payload.size() > kPayloadBytes)
    throw InvalidPacket("long TNT payload must be 1 to 6 bytes");
  LongTnt p;
  for (size_t i = 0; i < payload.size(); ++i) p.payload_[i] = payload[i];
  uint64_t value = payload_le_value(p.payload_);
  if ((value >> 2) == 0)
    throw EmptyTnt("long TNT carries no branch bits");
  return p;
}

LongTnt LongTnt::from_branches(const std::vector<bool>& branches) {
  if (branches.empty() || branches.size() > kMaxBranches)
    throw InvalidPacket("long TNT holds 1 to 46 branches, got " +
                        std::to_string(branches.size()));
  uint64_t value = pack_tnt_bits(branches);
  LongTnt p;
  for (size_t i = 0; i < kPayloadBytes; ++i)
    p.payload_[i] = static_cast<uint8_t>(value >> (8 * i));
  return p;
}

size_t LongTnt::valid_payload_length() const {
  uint64_t value = payload_le_value(payload_);
  int stop = std::bit_width(value) - 1;
  return static_cast<size_t>(stop / 8) + 1;
}

std::vector<bool> LongTnt::branches() const { return extract_tnt_bits(*this); }

TipPacket TipPacket::from_payload(IpBytesMode mode,
                                  std::span<const uint8_t> payload) {
  size_t expect = tip_payload_length(mode);
  if (payload.size() != expect)
    throw InvalidPacket("TIP payload length " + std::to_string(payload.size()) +
                        " does not match mode " + ip_bytes_mode_name(mode));
  TipPacket p;
  p.mode_ = mode;
  p.payload_len_ = expect;
  for (size_t i = 0; i < expect; ++i) p.payload_[i] = payload[i];
  return p;
}

TipPacket TipPacket::compress(uint64_t target, uint64_t last_ip) {
  IpBytesMode mode;
  if ((target >> 16) == (last_ip >> 16))
    mode = IpBytesMode::kUpdate16;
  else if ((target >> 32) == (last_ip >> 32))
    mode = IpBytesMode::kUpdate32;
  else if ((target >> 48) == (last_ip >> 48))
    mode = IpBytesMode::kUpdate48;
  else if ((target >> 47) == 0 || (target >> 47) == 0x1ffff)
    mode = IpBytesMode::kSignExt48;
  else
    mode = IpBytesMode::kFull64;

  TipPacket p;
  p.mode_ = mode;
  p.payload_len_ = tip_payload_length(mode);
  for (size_t i = 0; i < p.payload_len_; ++i)
    p.payload_[i] = static_cast<uint8_t>(target >> (8 * i));
  p.target_ip_ = target;
  return p;
}

TipPacket TipPacket::suppressed() { return TipPacket{}; }

std::vector<bool> extract_tnt_bits(const ShortTnt& packet) {
  auto branches = unpack_tnt_bits(packet.raw_byte());
  if (!branches || branches->empty())
    throw EmptyTnt("short TNT carries no branch bits");
  return *branches;
}

std::vector<bool> extract_tnt_bits(const LongTnt& packet) {
  auto branches = unpack_tnt_bits(payload_le_value(packet.payload()));
  if (!branches || branches->empty())
    throw EmptyTnt("long TNT carries no branch bits");
  return *branches;
}

std::vector<bool> extract_tnt_bits(const PtPacket& packet) {
  if (const auto* s = std::get_if<ShortTnt>(&packet))
    return extract_tnt_bits(*s);
  if (const auto* l = std::get_if<LongTnt>(&packet))
    return extract_tnt_bits(*l);
  throw InvalidPacket("TIP packet carries no TNT bits");
}

uint64_t reconstruct_ip(TipPacket& packet, DecoderState& state) {
  if (packet.mode() == IpBytesMode::kSuppressed)
    throw SuppressedTarget("suppressed TIP has no target");
  uint64_t payload = payload_le_value(packet.payload());
  uint64_t ip = 0;
  switch (packet.mode()) {
    case IpBytesMode::kUpdate16:
      ip = (state.last_ip & ~uint64_t{0xffff}) | payload;
      break;
    case IpBytesMode::kUpdate32:
      ip = (state.last_ip & ~uint64_t{0xffffffff}) | payload;
      break;
    case IpBytesMode::kUpdate48:
      ip = (state.last_ip & 0xffff000000000000ULL) | payload;
      break;
    case IpBytesMode::kSignExt48:
      ip = sign_extend_48(payload);
      break;
    case IpBytesMode::kFull64:
      ip = payload;
      break;
    case IpBytesMode::kSuppressed:
      break;  // unreachable
  }
  packet.set_target_ip(ip);
  state.last_ip = ip;
  return ip;
}

std::vector<PtPacket> decode_stream(std::span<const uint8_t> raw) {
  std::vector<PtPacket> packets;
  DecoderState state;
  while (state.offset < raw.size()) {
    uint8_t b = raw[state.offset];

    // long TNT: two-byte opcode, then a fixed six-byte payload
    if (b == LongTnt::kOpcode0 && state.offset + 1 < raw.size() &&
        raw[state.offset + 1] == LongTnt::kOpcode1) {
      if (state.offset + 2 + LongTnt::kPayloadBytes > raw.size())
        throw TruncatedPacket("long TNT at byte " +
                              std::to_string(state.offset) +
                              " runs past end of stream");
      auto payload = raw.subspan(state.offset + 2, LongTnt::kPayloadBytes);
      uint64_t value = payload_le_value(payload);
      if ((value >> 2) != 0) {
        packets.emplace_back(LongTnt::from_payload(payload));
        state.offset += 2 + LongTnt::kPayloadBytes;
        continue;
      }
      // no stop bit / no branch bits: not a packet, fall through and skip
    }

    // TIP: low five header bits fixed, mode on top
    if ((b & 0x1f) == TipPacket::kHeaderLow5) {
      uint8_t mode_bits = b >> 5;
      if (mode_bits == 5 || mode_bits == 7)
        throw InvalidPacket("reserved TIP mode " + std::to_string(mode_bits) +
                            " at byte " + std::to_string(state.offset));
      auto mode = static_cast<IpBytesMode>(mode_bits);
      size_t len = tip_payload_length(mode);
      if (state.offset + 1 + len > raw.size())
        throw TruncatedPacket("TIP at byte " + std::to_string(state.offset) +
                              " implies " + std::to_string(len) +
                              " payload bytes past end of stream");
      TipPacket packet =
          TipPacket::from_payload(mode, raw.subspan(state.offset + 1, len));
      if (mode != IpBytesMode::kSuppressed) reconstruct_ip(packet, state);
      packets.emplace_back(std::move(packet));
      state.offset += 1 + len;
      continue;
    }

    if (is_short_tnt_byte(b)) {
      packets.emplace_back(ShortTnt::from_raw(b));
      ++state.offset;
      continue;
    }

    ++state.offset;  // opaque filler
  }
  return packets;
}

std::vector<uint8_t> encode_packet(const PtPacket& packet) {
  std::vector<uint8_t> out;
  if (const auto* s = std::get_if<ShortTnt>(&packet)) {
    out.push_back(s->raw_byte());
  } else if (const auto* l = std::get_if<LongTnt>(&packet)) {
    out.push_back(LongTnt::kOpcode0);
    out.push_back(LongTnt::kOpcode1);
    out.insert(out.end(), l->payload().begin(), l->payload().end());
  } else {
    const auto& tip = std::get<TipPacket>(packet);
    out.push_back(static_cast<uint8_t>(
        (static_cast<uint8_t>(tip.mode()) << 5) | TipPacket::kHeaderLow5));
    out.insert(out.end(), tip.payload().begin(), tip.payload().end());
  }
  return out;
}

std::vector<uint8_t> encode_stream(const std::vector<PtPacket>& packets) {
  std::vector<uint8_t> out;
  for (const auto& p : packets) {
    auto bytes = encode_packet(p);
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  return out;
}

std::string describe_packet(const PtPacket& packet) {
  std::ostringstream os;
  if (const auto* s = std::get_if<ShortTnt>(&packet)) {
    os << "short_tnt raw=0x" << std::hex << int(s->raw_byte()) << std::dec
       << " bits=";
    for (bool b : s->branches()) os << (b ? 'T' : 'N');
  } else if (const auto* l = std::get_if<LongTnt>(&packet)) {
    os << "long_tnt len=" << l->valid_payload_length() << " bits=";
    for (bool b : l->branches()) os << (b ? 'T' : 'N');
  } else {
    const auto& tip = std::get<TipPacket>(packet);
    os << "tip mode=" << ip_bytes_mode_name(tip.mode());
    if (tip.target_ip()) os << " target=0x" << std::hex << *tip.target_ip();
  }
  return os.str();
}

}  // namespace ptflow
