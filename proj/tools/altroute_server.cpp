#include <httplib.h>

#include <CLI11.hpp>
#include <csignal>
#include <iostream>
#include <memory>

#include "altroute/error.hpp"
#include "altroute/network_io.hpp"
#include "altroute/service/config.hpp"
#include "altroute/service/http_api.hpp"
#include "altroute/service/provider.hpp"
#include "altroute/service/query_service.hpp"
#include "altroute/service/rating_store.hpp"

namespace {

httplib::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace altroute;
  CLI::App app{"Alternative route query and rating service", "altroute_server"};
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (environment variables override it)");
  CLI11_PARSE(app, argc, argv);

  try {
    const service::ServiceConfig cfg = service::load_config(config_path);
    if (cfg.network_path.empty()) {
      std::cerr << "error: no network configured (config key 'network' or ALTROUTE_NETWORK)\n";
      return 1;
    }
    const RoadNetwork net = load_network(cfg.network_path);
    service::RatingStore store(cfg.rating_store_path, cfg.compaction_threshold);
    std::unique_ptr<service::ReplayStubProvider> provider;
    if (!cfg.provider_fixture.empty()) {
      provider = std::make_unique<service::ReplayStubProvider>(
          service::ReplayStubProvider::from_file(cfg.provider_fixture));
    }
    service::QueryService qs(net, cfg, store, provider.get());
    service::HttpApi api(qs);

    httplib::Server server;
    api.install(server);
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "serving " << net.vertex_count() << " vertices on " << cfg.listen_host << ":"
              << cfg.listen_port << "\n";
    if (!server.listen(cfg.listen_host, cfg.listen_port)) {
      std::cerr << "error: cannot listen on " << cfg.listen_host << ":" << cfg.listen_port << "\n";
      return 2;
    }
    store.compact();
    return 0;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  }
}
