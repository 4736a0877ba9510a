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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ptflow/errors.hpp"

namespace ptflow {

// Streaming decoder/encoder for the branch-trace packet subset the pipeline
// consumes: short TNT, long TNT and TIP. Anything else in a raw stream is
// treated as opaque filler and skipped one byte at a time.
//
// Wire grammar:
//   short TNT  1 byte, bit 0 = 0. The most significant set bit is the stop
//              bit; the bits between it and bit 0 (exclusive) are branch
//              outcomes, oldest in the highest position. A byte with no bit
//              set above bit 1 carries no branches and is not a packet.
//   long TNT   opcode 0x02 0xa3 followed by 6 payload bytes. The payload is
//              scanned as a 48-bit little-endian value with the same rule as
//              the short form: bit 0 excluded, stop bit on top, up to 46
//              branch bits. An all-clear scan region means "not a packet".
//   TIP        1 header byte with 0b01101 in bits 4:0 and the IP compression
//              mode in bits 7:5, followed by 0-8 payload bytes as implied by
//              the mode. Modes 5 and 7 are reserved and rejected.

/// TIP address compression mode (header bits 7:5).
enum class IpBytesMode : uint8_t {
  kSuppressed = 0,  // no payload, no target
  kUpdate16 = 1,    // low 16 bits of the last IP replaced
  kUpdate32 = 2,    // low 32 bits replaced
  kSignExt48 = 3,   // 48-bit payload, sign-extended
  kUpdate48 = 4,    // low 48 bits replaced
  kFull64 = 6,      // full 64-bit target
};

/// Payload byte count implied by a mode.
size_t tip_payload_length(IpBytesMode mode);

const char* ip_bytes_mode_name(IpBytesMode mode);

class ShortTnt {
 public:
  /// Wraps a raw short-TNT byte. Throws InvalidPacket when the header bit is
  /// set, EmptyTnt when no branch bit exists below the stop bit.
  static ShortTnt from_raw(uint8_t raw);

  /// Builds the packet holding the given outcomes, oldest first.
  /// Throws InvalidPacket unless 1 <= branches.size() <= 6.
  static ShortTnt from_branches(const std::vector<bool>& branches);

  uint8_t raw_byte() const { return raw_; }
  std::vector<bool> branches() const;

  bool operator==(const ShortTnt&) const = default;

 private:
  uint8_t raw_ = 0;
};

class LongTnt {
 public:
  static constexpr uint8_t kOpcode0 = 0x02;
  static constexpr uint8_t kOpcode1 = 0xa3;
  static constexpr size_t kPayloadBytes = 6;
  static constexpr size_t kMaxBranches = 46;

  /// Wraps a payload of 1..6 bytes (shorter payloads are zero-extended,
  /// which is a no-op above the stop bit). Throws EmptyTnt when the payload
  /// carries zero branch bits.
  static LongTnt from_payload(std::span<const uint8_t> payload);

  /// Builds the packet holding the given outcomes, oldest first.
  /// Throws InvalidPacket unless 1 <= branches.size() <= 46.
  static LongTnt from_branches(const std::vector<bool>& branches);

  const std::array<uint8_t, kPayloadBytes>& payload() const { return payload_; }

  /// Bytes up to and including the one holding the stop bit. The pixel
  /// conversion emits exactly this many payload bytes.
  size_t valid_payload_length() const;

  std::vector<bool> branches() const;

  bool operator==(const LongTnt&) const = default;

 private:
  std::array<uint8_t, kPayloadBytes> payload_{};
};

class TipPacket {
 public:
  static constexpr uint8_t kHeaderLow5 = 0x0d;

  /// Packet as seen on the wire: mode plus raw payload bytes.
  static TipPacket from_payload(IpBytesMode mode,
                                std::span<const uint8_t> payload);

  /// Packet carrying `target`, compressed against `last_ip` with the
  /// tightest applicable mode.
  static TipPacket compress(uint64_t target, uint64_t last_ip);

  static TipPacket suppressed();

  IpBytesMode mode() const { return mode_; }
  std::span<const uint8_t> payload() const {
    return {payload_.data(), payload_len_};
  }

  /// Reconstructed target address; empty until reconstruct_ip ran (always
  /// empty for suppressed packets).
  std::optional<uint64_t> target_ip() const { return target_ip_; }
  void set_target_ip(uint64_t ip) { target_ip_ = ip; }

  bool operator==(const TipPacket& o) const {
    return mode_ == o.mode_ && payload_len_ == o.payload_len_ &&
           payload_ == o.payload_ && target_ip_ == o.target_ip_;
  }

 private:
  IpBytesMode mode_ = IpBytesMode::kSuppressed;
  std::array<uint8_t, 8> payload_{};
  size_t payload_len_ = 0;
  std::optional<uint64_t> target_ip_;
};

using PtPacket = std::variant<ShortTnt, LongTnt, TipPacket>;

/// Decoder state threaded through a stream: the last reconstructed target
/// address and the byte offset reached.
struct DecoderState {
  uint64_t last_ip = 0;
  size_t offset = 0;
};

/// Branch outcomes in program order, oldest first. Throws EmptyTnt when the
/// packet carries no branch bits.
std::vector<bool> extract_tnt_bits(const ShortTnt& packet);
std::vector<bool> extract_tnt_bits(const LongTnt& packet);
std::vector<bool> extract_tnt_bits(const PtPacket& packet);

/// Rebuilds the full target address from the payload and state.last_ip,
/// stores it in the packet and advances state.last_ip. Throws
/// SuppressedTarget for suppressed packets.
uint64_t reconstruct_ip(TipPacket& packet, DecoderState& state);

/// Decodes a raw byte stream into TNT/TIP packets in stream order. TIP
/// targets are reconstructed against a fresh DecoderState (last_ip = 0).
/// Unrecognized bytes are skipped. Throws TruncatedPacket when a recognized
/// header implies more payload than the stream holds, InvalidPacket on a
/// reserved TIP mode.
std::vector<PtPacket> decode_stream(std::span<const uint8_t> raw);

/// Wire bytes for one packet. decode_stream(encode_packet(p)) == {p} up to
/// target reconstruction.
std::vector<uint8_t> encode_packet(const PtPacket& packet);

/// Wire bytes for a whole packet list.
std::vector<uint8_t> encode_stream(const std::vector<PtPacket>& packets);

/// One-line human-readable form, used by the `decode` subcommand.
std::string describe_packet(const PtPacket& packet);

}  // namespace ptflow
