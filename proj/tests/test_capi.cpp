#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "dicke/dicke.h"

namespace {

std::string take(char* s) {
    std::string out(s);
    dicke_string_free(s);
    return out;
}

dicke_params at(double lam) {
    dicke_params p;
    dicke_params_default(&p);
    p.lambda = lam;
    return p;
}

}  // namespace

TEST_CASE("version and status strings") {
    CHECK(std::strlen(dicke_version()) > 0);
    CHECK(std::string(dicke_status_string(DICKE_OK)) == "ok");
    CHECK(std::strlen(dicke_status_string(DICKE_CRITICAL_POINT)) > 0);
    CHECK(std::strlen(dicke_status_string(static_cast<dicke_status>(99))) > 0);
}

TEST_CASE("single-point functions") {
    dicke_params p = at(0.3);
    CHECK(p.omega == 1.0);
    CHECK(p.n_atoms == 100);

    double lc = 0.0;
    REQUIRE(dicke_critical_coupling(&p, &lc) == DICKE_OK);
    CHECK(lc == doctest::Approx(0.5));

    double mean[4], cov[16];
    REQUIRE(dicke_ground_state(&p, mean, cov) == DICKE_OK);
    for (double m : mean) CHECK(m == 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(cov[4 * i + j] == doctest::Approx(cov[4 * j + i]).epsilon(1e-14));

    dicke_qfi_result q;
    REQUIRE(dicke_qfi(&p, &q) == DICKE_OK);
    CHECK(q.qfi > 0.0);
    CHECK(q.displacement_term == 0.0);

    double fi = 0.0;
    REQUIRE(dicke_fi_homodyne(&p, 0.0, DICKE_TARGET_RADIATION, &fi) == DICKE_OK);
    CHECK(fi > 0.0);
    CHECK(fi <= q.qfi * (1 + 1e-9));

    int n_max = 0;
    REQUIRE(dicke_fi_photon_counting(&p, &fi, &n_max) == DICKE_OK);
    CHECK(fi <= q.qfi * (1 + 1e-9));
    CHECK(n_max > 0);

    double en = 0.0;
    REQUIRE(dicke_log_negativity(&p, &en) == DICKE_OK);
    CHECK(en > 0.0);

    char* json = nullptr;
    REQUIRE(dicke_state_json(&p, &json) == DICKE_OK);
    CHECK(take(json).find("\"cov\"") != std::string::npos);
}

TEST_CASE("error reporting") {
    dicke_params p = at(0.5);
    dicke_qfi_result q;
    CHECK(dicke_qfi(&p, &q) == DICKE_CRITICAL_POINT);
    CHECK(std::strlen(dicke_last_error()) > 0);

    p = at(0.3);
    p.omega = -1.0;
    double mean[4], cov[16];
    CHECK(dicke_ground_state(&p, mean, cov) == DICKE_INVALID_ARGUMENT);
    CHECK(dicke_ground_state(nullptr, mean, cov) == DICKE_INVALID_ARGUMENT);
    p = at(0.3);
    CHECK(dicke_ground_state(&p, nullptr, cov) == DICKE_INVALID_ARGUMENT);

    CHECK(dicke_ground_state(&p, mean, cov) == DICKE_OK);
    CHECK(std::string(dicke_last_error()).empty());

    dicke_command cmd;
    CHECK(dicke_parse_command("fi-homodyne", &cmd) == DICKE_OK);
    CHECK(cmd == DICKE_CMD_FI_HOMODYNE);
    CHECK(dicke_parse_command("nope", &cmd) == DICKE_CONFIG);
}

TEST_CASE("config and sweeps") {
    dicke_config* cfg = nullptr;
    REQUIRE(dicke_config_create(&cfg) == DICKE_OK);
    CHECK(dicke_config_merge_json(cfg, "{\"omega\": 1.0, \"format\": \"json\"}") == DICKE_OK);
    dicke_format fmt = DICKE_FORMAT_CSV;
    CHECK(dicke_config_format(cfg, &fmt) == DICKE_OK);
    CHECK(fmt == DICKE_FORMAT_JSON);
    CHECK(dicke_config_merge_json(cfg, "{\"bogus\": 1}") == DICKE_CONFIG);
    CHECK(dicke_config_set_number(cfg, "bogus", 1.0) == DICKE_CONFIG);
    CHECK(dicke_config_set_string(cfg, "target", "nowhere") == DICKE_CONFIG);
    CHECK(dicke_config_set_number(cfg, "points", 1.0) == DICKE_OK);
    CHECK(dicke_config_validate(cfg) == DICKE_CONFIG);
    CHECK(dicke_config_set_number(cfg, "points", 5.0) == DICKE_OK);
    CHECK(dicke_config_validate(cfg) == DICKE_OK);

    const double lambdas[] = {0.2, 0.5, 0.8};
    REQUIRE(dicke_config_set_lambdas(cfg, lambdas, 3) == DICKE_OK);
    const double phis[] = {0.0, 0.5};
    REQUIRE(dicke_config_set_phis(cfg, phis, 2) == DICKE_OK);

    dicke_table* t = nullptr;
    REQUIRE(dicke_run(cfg, DICKE_CMD_QFI, &t) == DICKE_OK);
    CHECK(dicke_table_rows(t) == 3);
    CHECK(dicke_table_columns(t) == 4);
    CHECK(dicke_table_failed_rows(t) == 1);
    double v = 0.0;
    CHECK(dicke_table_value(t, 0, 0, &v) == DICKE_OK);
    CHECK(v == 0.2);
    CHECK(dicke_table_value(t, 1, 1, &v) == DICKE_OK);
    CHECK(std::isnan(v));
    CHECK(dicke_table_value(t, 3, 0, &v) == DICKE_INVALID_ARGUMENT);
    char* text = nullptr;
    REQUIRE(dicke_table_render(t, DICKE_FORMAT_CSV, &text) == DICKE_OK);
    CHECK(take(text).find("singular") != std::string::npos);
    dicke_table_destroy(t);

    REQUIRE(dicke_run(cfg, DICKE_CMD_FI_HOMODYNE, &t) == DICKE_OK);
    CHECK(dicke_table_rows(t) == 6);
    dicke_table_destroy(t);

    dicke_config_destroy(cfg);
    dicke_config_destroy(nullptr);
    dicke_table_destroy(nullptr);
}
