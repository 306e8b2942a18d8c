#pragma once

#include "coper/app/engine.hpp"

#include <memory>
#include <string>

namespace coper::app {

/// HTTP front end over an EngineState:
///   POST /api/search  {"query", "k"?, "omega"?}
///   GET  /api/doc/{id}
///   GET  /api/stats
///   GET  /healthz
/// API routes answer 503 until set_state() has been called.
class SearchService {
  public:
    SearchService();
    ~SearchService();
    SearchService(const SearchService&) = delete;
    SearchService& operator=(const SearchService&) = delete;

    /// Swaps in a loaded engine; requests in flight keep the old one.
    void set_state(std::shared_ptr<const EngineState> state);

    /// Binds `host:port` (port 0 picks a free one) and returns the port.
    int bind(const std::string& host, int port);

    /// Serves until stop(); call after bind().
    void listen();
    void stop();
    void wait_until_ready();

  private:
    struct Impl;
    std::unique_ptr<Impl> m_impl;
};

}  // namespace coper::app
