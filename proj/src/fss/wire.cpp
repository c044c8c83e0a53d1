#include "jfs/fss/wire.hpp"

#include <openssl/evp.h>

#include <json.hpp>

#include "jfs/dataio/png.hpp"

namespace jfs::fss::wire {
namespace {

using json = nlohmann::ordered_json;

json parse_frame(std::string_view line) {
  try {
    auto j = json::parse(line);
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
      throw ProtocolError("frame is not an object with a string 'type'");
    return j;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed frame: ") + e.what());
  }
}

json png_field(const dataio::Bytes& png) { return json{{"png_b64", base64_encode(png)}}; }

std::vector<std::uint8_t> png_from(const json& field) {
  if (!field.is_object() || !field.contains("png_b64") || !field["png_b64"].is_string())
    throw ProtocolError("expected {\"png_b64\": ...}");
  return base64_decode(field["png_b64"].get<std::string>());
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw ProtocolError("base64 length not a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw ProtocolError("invalid base64 payload");
  // EVP_DecodeBlock keeps the zero bytes produced by '=' padding.
  std::size_t pad = 0;
  if (!text.empty() && text.back() == '=') ++pad;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

std::string hello_request() {
  return json{{"type", "hello"}, {"version", kProtocolVersion}}.dump();
}

std::string shutdown_request() { return json{{"type", "shutdown"}}.dump(); }

std::string predict_request(std::uint64_t id, const RgbImage& query, std::span<const SupportRef> support) {
  json s = json::array();
  for (const auto& p : support)
    s.push_back({{"image", png_field(dataio::encode_rgb_png(p.image))},
                 {"mask", png_field(dataio::encode_mask_png(p.mask))}});
  return json{{"type", "predict"},
              {"id", id},
              {"query", png_field(dataio::encode_rgb_png(query))},
              {"support", std::move(s)}}
      .dump();
}

std::string parse_hello(std::string_view line) {
  const auto j = parse_frame(line);
  if (j["type"] != "hello") throw ProtocolError("expected hello, got " + j["type"].get<std::string>());
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw ProtocolError("hello without integer version");
  if (j["version"].get<int>() != kProtocolVersion)
    throw ProtocolError("adapter speaks protocol version " + std::to_string(j["version"].get<int>()) +
                        ", expected " + std::to_string(kProtocolVersion));
  if (!j.contains("name") || !j["name"].is_string()) throw ProtocolError("hello without name");
  return j["name"].get<std::string>();
}

BinaryMask parse_result(std::string_view line, std::uint64_t id, Dims query_dims) {
  const auto j = parse_frame(line);
  const auto type = j["type"].get<std::string>();
  if (!j.contains("id") || !j["id"].is_number_unsigned() || j["id"].get<std::uint64_t>() != id)
    throw ProtocolError("reply does not carry request id " + std::to_string(id));
  if (type == "error") {
    const std::string message = j.contains("message") && j["message"].is_string()
                                    ? j["message"].get<std::string>()
                                    : std::string("(no message)");
    throw BackendError("adapter error: " + message);
  }
  if (type != "result") throw ProtocolError("unexpected frame type '" + type + "'");
  if (!j.contains("mask")) throw ProtocolError("result without mask");
  dataio::Gray8 g;
  try {
    g = dataio::decode_gray8_png(png_from(j["mask"]));
  } catch (const FormatError& e) {
    throw ProtocolError(std::string("result mask: ") + e.what());
  }
  if (g.dims != query_dims)
    throw ContractViolationError("adapter returned a " + std::to_string(g.dims.width) + "x" +
                                 std::to_string(g.dims.height) + " mask for a " +
                                 std::to_string(query_dims.width) + "x" +
                                 std::to_string(query_dims.height) + " query");
  for (auto v : g.pixels)
    if (v != 0 && v != 255)
      throw ContractViolationError("adapter mask contains gray value " + std::to_string(v));
  return BinaryMask::from_bytes(g.dims.width, g.dims.height, g.pixels);
}

PredictRequest parse_predict_request(std::string_view line) {
  const auto j = parse_frame(line);
  if (j["type"] != "predict") throw ProtocolError("expected predict frame");
  PredictRequest r;
  try {
    r.id = j.at("id").get<std::uint64_t>();
    r.query = dataio::decode_rgb_png(png_from(j.at("query")));
    for (const auto& s : j.at("support")) {
      r.support.push_back({dataio::decode_rgb_png(png_from(s.at("image"))),
                           dataio::decode_mask_png(png_from(s.at("mask")))});
    }
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed predict frame: ") + e.what());
  }
  return r;
}

std::string result_frame(std::uint64_t id, const BinaryMask& mask) {
  return json{{"type", "result"}, {"id", id}, {"mask", png_field(dataio::encode_mask_png(mask))}}.dump();
}

std::string error_frame(std::uint64_t id, std::string_view message) {
  return json{{"type", "error"}, {"id", id}, {"message", message}}.dump();
}

}  // namespace jfs::fss::wire
