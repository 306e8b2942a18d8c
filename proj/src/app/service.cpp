#include "coper/app/service.hpp"

#include "coper/app/report.hpp"
#include "coper/common/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <mutex>

namespace coper::app {

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

void error_reply(httplib::Response& res, int status, const std::string& message)
{
    res.status = status;
    res.set_content(nlohmann::json{{"error", message}}.dump(), kJson);
}

}  // namespace

struct SearchService::Impl {
    httplib::Server server;
    std::mutex mutex;
    std::shared_ptr<const EngineState> state;

    std::shared_ptr<const EngineState> current()
    {
        std::lock_guard lock(mutex);
        return state;
    }

    std::shared_ptr<const EngineState> require(httplib::Response& res)
    {
        auto s = current();
        if (!s) error_reply(res, 503, "engine loading");
        return s;
    }

    void search(const httplib::Request& req, httplib::Response& res)
    {
        auto s = require(res);
        if (!s) return;
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(req.body);
        } catch (const nlohmann::json::parse_error&) {
            return error_reply(res, 400, "request body is not valid JSON");
        }
        if (!body.is_object()) return error_reply(res, 400, "request body must be a JSON object");
        auto q = body.find("query");
        if (q == body.end() || !q->is_string() || q->get<std::string>().empty()) {
            return error_reply(res, 400, "'query' must be a non-empty string");
        }
        std::optional<std::size_t> k;
        if (auto it = body.find("k"); it != body.end() && !it->is_null()) {
            if (!it->is_number_integer() || it->get<long long>() < 1) {
                return error_reply(res, 400, "'k' must be a positive integer");
            }
            k = it->get<std::size_t>();
        }
        std::optional<double> omega;
        if (auto it = body.find("omega"); it != body.end() && !it->is_null()) {
            if (!it->is_number()) return error_reply(res, 400, "'omega' must be a number");
            omega = it->get<double>();
            if (!(*omega >= 0.0 && *omega <= 1.0)) return error_reply(res, 422, "'omega' must lie in [0,1]");
        }
        try {
            auto out = run_search(*s, q->get<std::string>(), k, omega);
            res.set_content(search_json(*s, out), kJson);
        } catch (const InputError& e) {
            error_reply(res, 400, e.what());
        } catch (const DomainError& e) {
            error_reply(res, 422, e.what());
        }
    }

    void doc(const httplib::Request& req, httplib::Response& res)
    {
        auto s = require(res);
        if (!s) return;
        const auto* d = s->corpus->find(req.matches[1].str());
        if (d == nullptr) return error_reply(res, 404, "unknown document '" + req.matches[1].str() + "'");
        res.set_content(doc_json(*s, *d), kJson);
    }

    void stats(const httplib::Request&, httplib::Response& res)
    {
        auto s = require(res);
        if (!s) return;
        res.set_content(stats_json(*s), kJson);
    }
};

SearchService::SearchService() : m_impl(std::make_unique<Impl>())
{
    auto* impl = m_impl.get();
    auto& srv = impl->server;
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    srv.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok", "text/plain"); });
    srv.Post("/api/search", [impl](const httplib::Request& req, httplib::Response& res) { impl->search(req, res); });
    srv.Get(R"(/api/doc/([^/]+))", [impl](const httplib::Request& req, httplib::Response& res) { impl->doc(req, res); });
    srv.Get("/api/stats", [impl](const httplib::Request& req, httplib::Response& res) { impl->stats(req, res); });
    srv.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            error_reply(res, 500, e.what());
        } catch (...) {
            error_reply(res, 500, "internal error");
        }
    });
}

SearchService::~SearchService() { stop(); }

void SearchService::set_state(std::shared_ptr<const EngineState> state)
{
    std::lock_guard lock(m_impl->mutex);
    m_impl->state = std::move(state);
}

int SearchService::bind(const std::string& host, int port)
{
    int bound = port;
    if (port == 0) {
        bound = m_impl->server.bind_to_any_port(host);
    } else if (!m_impl->server.bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) {
        throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
    }
    return bound;
}

void SearchService::listen() { m_impl->server.listen_after_bind(); }

void SearchService::stop()
{
    if (m_impl) m_impl->server.stop();
}

void SearchService::wait_until_ready() { m_impl->server.wait_until_ready(); }

}  // namespace coper::app
