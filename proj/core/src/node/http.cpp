// Copyright 2026 The meshchain Authors.
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

#include "meshchain/node/http.hpp"

#include <httplib.h>

#include "meshchain/mesh/obj.hpp"
#include "meshchain/node/store.hpp"

namespace meshchain::node {
namespace {

constexpr const char* kJson = "application/json";

struct HttpFailure {
  int status;
  std::string message;
};

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(canonical_dump(body), kJson);
}

void fail(httplib::Response& res, int status, const std::string& message) {
  reply(res, status, Json{{"error", message}});
}

int status_for(NodeError::Kind kind) {
  switch (kind) {
    case NodeError::Kind::bad_request:
      return 400;
    case NodeError::Kind::not_found:
      return 404;
    case NodeError::Kind::conflict:
      return 409;
  }
  return 400;
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

Handler guarded(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const HttpFailure& e) {
      fail(res, e.status, e.message);
    } catch (const NodeError& e) {
      fail(res, status_for(e.kind()), e.what());
    } catch (const CodecError& e) {
      fail(res, 400, e.what());
    } catch (const mesh::MeshError& e) {
      fail(res, 400, e.what());
    } catch (const std::exception& e) {
      fail(res, 500, e.what());
    }
  };
}

Json parse_body(const httplib::Request& req) {
  Json body = parse_json(req.body);
  if (!body.is_object()) throw HttpFailure{400, "request body must be a JSON object"};
  return body;
}

Digest digest_param(const httplib::Request& req, const char* what) {
  const std::string text = req.matches[1];
  auto d = Digest::from_hex(text);
  if (!d) throw HttpFailure{400, std::string("malformed ") + what + " '" + text + "'"};
  return *d;
}

std::optional<std::string> origin_of(const httplib::Request& req) {
  if (!req.has_header(kOriginHeader)) return std::nullopt;
  return req.get_header_value(kOriginHeader);
}

Json block_summary(const Block& b) {
  Json ids = Json::array();
  for (const auto& tx : b.transactions) ids.push_back(tx.id.hex());
  return Json{{"difficulty", b.difficulty}, {"hash", b.hash.hex()},
              {"height", b.height},         {"nonce", b.nonce},
              {"prev_hash", b.prev_hash.hex()}, {"timestamp", b.timestamp},
              {"tx_ids", std::move(ids)}};
}

Json string_list(const std::vector<std::string>& items) {
  Json out = Json::array();
  for (const auto& s : items) out.push_back(s);
  return out;
}

void install_routes(httplib::Server& server, Node& node) {
  // --- modeling-tool API ---------------------------------------------------

  server.Post("/api/commit", guarded([&node](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    for (const auto& [key, value] : body.items()) {
      if (key != "mesh" && key != "obj_text" && key != "author" && key != "parent") {
        throw HttpFailure{400, "commit: unexpected key '" + key + "'"};
      }
    }
    const bool has_mesh = body.contains("mesh");
    if (has_mesh == body.contains("obj_text")) {
      throw HttpFailure{400, "commit: provide exactly one of 'mesh' or 'obj_text'"};
    }
    const mesh::Mesh m = has_mesh ? mesh::mesh_from_json(body["mesh"], "mesh")
                                  : mesh::parse_obj(codec::as_string(body["obj_text"], "obj_text"));
    std::string author;
    if (body.contains("author")) author = codec::as_string(body["author"], "author");
    std::optional<Digest> parent;
    if (body.contains("parent") && !body["parent"].is_null()) {
      parent = chain::digest_from_json(body["parent"], "parent");
    }
    reply(res, 200, chain::to_json(node.commit(m, std::move(author), parent)));
  }));

  server.Post("/api/mine", guarded([&node](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, chain::to_json(node.mine()));
  }));

  server.Get(R"(/api/checkout/([^/]+))",
             guarded([&node](const httplib::Request& req, httplib::Response& res) {
               const mesh::Mesh m = node.checkout(digest_param(req, "transaction id"));
               reply(res, 200, Json{{"mesh", mesh::to_json(m)}, {"obj_text", mesh::serialize_obj(m)}});
             }));

  server.Get("/api/chain", guarded([&node](const httplib::Request&, httplib::Response& res) {
    const auto chain = node.active_chain();
    Json blocks = Json::array();
    for (const auto& b : chain) blocks.push_back(block_summary(b));
    const auto work = chain::cumulative_work(chain);
    reply(res, 200, Json{{"blocks", std::move(blocks)},
                         {"height", chain.back().height},
                         {"tip", chain.back().hash.hex()},
                         {"work", work.str()}});
  }));

  server.Get(R"(/api/block/([^/]+))",
             guarded([&node](const httplib::Request& req, httplib::Response& res) {
               const Digest hash = digest_param(req, "block hash");
               const auto block = node.find_block(hash);
               if (!block) throw HttpFailure{404, "unknown block " + hash.hex()};
               reply(res, 200, chain::to_json(*block));
             }));

  server.Get(R"(/api/transaction/([^/]+))",
             guarded([&node](const httplib::Request& req, httplib::Response& res) {
               const Digest id = digest_param(req, "transaction id");
               const auto record = node.find_transaction(id);
               if (!record) throw HttpFailure{404, "unknown transaction " + id.hex()};
               Json out{{"block_hash", nullptr},
                        {"face_count", nullptr},
                        {"height", nullptr},
                        {"status", record->block_hash ? "chain" : "mempool"},
                        {"transaction", chain::to_json(record->tx)},
                        {"vertex_count", nullptr}};
               if (record->block_hash) {
                 out["block_hash"] = record->block_hash->hex();
                 out["height"] = *record->height;
                 const mesh::Mesh m = node.checkout(id);
                 out["vertex_count"] = m.vertices.size();
                 out["face_count"] = m.faces.size();
               }
               reply(res, 200, out);
             }));

  server.Get("/api/mempool", guarded([&node](const httplib::Request&, httplib::Response& res) {
    Json txs = Json::array();
    for (const auto& tx : node.mempool_transactions()) txs.push_back(chain::to_json(tx));
    reply(res, 200, Json{{"orphans", node.orphan_transaction_count()},
                         {"transactions", std::move(txs)}});
  }));

  server.Get("/api/peers", guarded([&node](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, Json{{"peers", string_list(node.peers())}, {"self", node.self_url()}});
  }));

  server.Post("/api/peers", guarded([&node](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    codec::expect_keys(body, {"url"}, "peers");
    const std::string& url = codec::as_string(body["url"], "url");
    const auto normalized = normalize_peer_url(url);
    if (!normalized) throw HttpFailure{400, "malformed peer url '" + url + "'"};
    if (*normalized == node.self_url()) throw HttpFailure{400, "cannot peer with self"};
    const bool added = node.add_peer(*normalized);
    reply(res, 200, Json{{"added", added}, {"peers", string_list(node.peers())}});
  }));

  server.Get("/api/status", guarded([&node](const httplib::Request&, httplib::Response& res) {
    const Block tip = node.tip();
    reply(res, 200, Json{{"difficulty", node.difficulty()},
                         {"height", tip.height},
                         {"mempool", node.mempool_transactions().size()},
                         {"peers", node.peers().size()},
                         {"tip", tip.hash.hex()},
                         {"work", node.tip_work().str()}});
  }));

  // --- peer protocol -------------------------------------------------------

  server.Post("/p2p/transaction",
              guarded([&node](const httplib::Request& req, httplib::Response& res) {
                const auto tx = chain::transaction_from_json(parse_json(req.body));
                const auto status = node.receive_transaction(tx, origin_of(req));
                if (status == mempool::AdmitStatus::invalid) {
                  throw HttpFailure{400, "invalid transaction " + tx.id.hex()};
                }
                reply(res, 200, Json{{"result", mempool::to_string(status)}});
              }));

  server.Post("/p2p/block", guarded([&node](const httplib::Request& req, httplib::Response& res) {
    const auto block = chain::block_from_json(parse_json(req.body));
    const auto receipt = node.receive_block(block, origin_of(req));
    if (receipt == BlockReceipt::invalid) {
      throw HttpFailure{400, "invalid block " + block.hash.hex()};
    }
    reply(res, 200, Json{{"result", to_string(receipt)}});
  }));

  server.Get("/p2p/chain", guarded([&node](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, Json{{"blocks", chain::chain_to_json(node.active_chain())}});
  }));

  server.Get("/p2p/genesis", guarded([](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, Json{{"format", kFormatVersion},
                         {"genesis", chain::genesis_block().hash.hex()}});
  }));
}

std::unique_ptr<httplib::Client> make_client(const std::string& base,
                                             std::chrono::milliseconds timeout) {
  auto client = std::make_unique<httplib::Client>(base);
  const auto sec = static_cast<time_t>(timeout.count() / 1000);
  const auto usec = static_cast<time_t>((timeout.count() % 1000) * 1000);
  client->set_connection_timeout(sec, usec);
  client->set_read_timeout(sec, usec);
  client->set_write_timeout(sec, usec);
  return client;
}

}  // namespace

struct HttpService::Impl {
  httplib::Server server;
};

HttpService::HttpService(Node& node, HttpOptions options)
    : node_(node), options_(std::move(options)), impl_(std::make_unique<Impl>()) {
  auto& server = impl_->server;
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  install_routes(server, node_);
  if (!options_.web_root.empty()) {
    if (!server.set_mount_point("/", options_.web_root.string())) {
      throw std::runtime_error("web root " + options_.web_root.string() + " is not a directory");
    }
  }
}

HttpService::~HttpService() { stop(); }

void HttpService::start() {
  auto& server = impl_->server;
  if (options_.port == 0) {
    const int bound = server.bind_to_any_port(options_.host);
    if (bound <= 0) throw std::runtime_error("cannot bind " + options_.host);
    port_ = static_cast<std::uint16_t>(bound);
  } else {
    if (!server.bind_to_port(options_.host, options_.port)) {
      throw std::runtime_error("cannot bind " + options_.host + ":" +
                               std::to_string(options_.port));
    }
    port_ = options_.port;
  }
  thread_ = std::thread([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
}

void HttpService::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

std::string HttpService::base_url() const {
  return "http://" + options_.host + ":" + std::to_string(port_);
}

std::optional<PeerResponse> HttpTransport::post(const std::string& peer, const std::string& path,
                                                const std::string& body,
                                                const std::string& origin) {
  auto client = make_client(peer, timeout_);
  httplib::Headers headers;
  if (!origin.empty()) headers.emplace(kOriginHeader, origin);
  auto res = client->Post(path, headers, body, kJson);
  if (!res) return std::nullopt;
  return PeerResponse{res->status, res->body};
}

std::optional<PeerResponse> HttpTransport::get(const std::string& peer, const std::string& path) {
  auto client = make_client(peer, timeout_);
  auto res = client->Get(path);
  if (!res) return std::nullopt;
  return PeerResponse{res->status, res->body};
}

ApiClient::ApiClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

namespace {

Json unwrap(const httplib::Result& res, const std::string& base) {
  if (!res) throw ApiError(0, "cannot reach node at " + base + ": " + httplib::to_string(res.error()));
  Json body;
  try {
    body = parse_json(res->body);
  } catch (const CodecError&) {
    throw ApiError(res->status, "node returned status " + std::to_string(res->status) +
                                    " with a non-JSON body");
  }
  if (res->status != 200) {
    const bool has_error = body.is_object() && body.contains("error") && body["error"].is_string();
    throw ApiError(res->status, has_error ? body["error"].get<std::string>()
                                          : "node returned status " + std::to_string(res->status));
  }
  return body;
}

}  // namespace

Json ApiClient::get(const std::string& path) const {
  auto client = make_client(base_url_, timeout_);
  return unwrap(client->Get(path), base_url_);
}

Json ApiClient::post(const std::string& path, const Json& body) const {
  auto client = make_client(base_url_, timeout_);
  return unwrap(client->Post(path, canonical_dump(body), kJson), base_url_);
}

}  // namespace meshchain::node
