#pragma once

// Wire protocol v1: newline-delimited UTF-8 JSON between this process and an
// adapter child over its stdin/stdout.
//
//   -> {"type":"hello","version":1}
//   <- {"type":"hello","version":1,"name":"..."}
//   -> {"type":"predict","id":N,"query":{"png_b64":...},
//       "support":[{"image":{"png_b64":...},"mask":{"png_b64":...}}, ...]}
//   <- {"type":"result","id":N,"mask":{"png_b64":...}}
//   <- {"type":"error","id":N,"message":"..."}
//   -> {"type":"shutdown"}
//
// Images travel as 8-bit RGB PNG, masks as 8-bit gray PNG with values 0/255.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jfs/fss/backend.hpp"

namespace jfs::fss::wire {

inline constexpr int kProtocolVersion = 1;

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws ProtocolError on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

std::string hello_request();
std::string shutdown_request();
std::string predict_request(std::uint64_t id, const RgbImage& query, std::span<const SupportRef> support);

/// Parses a hello reply; returns the adapter name. Throws ProtocolError on
/// malformed frames or a version other than 1.
std::string parse_hello(std::string_view line);

/// Parses the reply to predict `id`. An error frame becomes BackendError; a
/// malformed frame or foreign id is a ProtocolError; a mask of the wrong size
/// or with gray values other than 0/255 is a ContractViolationError.
BinaryMask parse_result(std::string_view line, std::uint64_t id, Dims query_dims);

// Adapter-side helpers (used by conforming adapters written against this
// library, and by tests).
struct PredictRequest {
  std::uint64_t id = 0;
  RgbImage query;
  std::vector<SupportPair> support;
};
PredictRequest parse_predict_request(std::string_view line);
std::string result_frame(std::uint64_t id, const BinaryMask& mask);
std::string error_frame(std::uint64_t id, std::string_view message);

}  // namespace jfs::fss::wire
