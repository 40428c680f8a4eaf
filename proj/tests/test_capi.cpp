#include "sumprod/sumprod.h"

#include <doctest.h>

#include <cstring>
#include <string>

namespace {

struct Set {
    sp_set* ptr = nullptr;
    ~Set() { sp_set_free(ptr); }
};

struct Rep {
    sp_report* ptr = nullptr;
    ~Rep() { sp_report_free(ptr); }
};

struct Str {
    char* ptr = nullptr;
    ~Str() { sp_string_free(ptr); }
    std::string view() const { return ptr ? ptr : ""; }
};

} // namespace

TEST_CASE("c api: set lifecycle and operations") {
    Set a;
    REQUIRE(sp_set_parse_text("3\n1\n2\n2\n", &a.ptr) == SP_OK);
    CHECK(sp_set_size(a.ptr) == 3);

    Str first;
    REQUIRE(sp_set_element(a.ptr, 0, &first.ptr) == SP_OK);
    CHECK(first.view() == "1");
    CHECK(sp_set_element(a.ptr, 9, &first.ptr) == SP_ERR_INVALID_ARGUMENT);

    Set sums;
    REQUIRE(sp_set_combine(a.ptr, a.ptr, "sum", &sums.ptr) == SP_OK);
    CHECK(sp_set_size(sums.ptr) == 5);

    Set inv;
    REQUIRE(sp_set_inverse(a.ptr, &inv.ptr) == SP_OK);
    Str text;
    REQUIRE(sp_set_format(inv.ptr, &text.ptr) == SP_OK);
    CHECK(text.view() == "1/3\n1/2\n1\n");

    Set dilated;
    REQUIRE(sp_set_dilate(a.ptr, "2", &dilated.ptr) == SP_OK);
    CHECK(sp_set_size(dilated.ptr) == 3);

    Set slice;
    REQUIRE(sp_set_popular_slice(a.ptr, "2", &slice.ptr) == SP_OK);
    CHECK(sp_set_size(slice.ptr) == 1); // {2} = {1,2,3} ∩ {2,4,6}
}

TEST_CASE("c api: error mapping and messages") {
    Set a;
    REQUIRE(sp_set_parse_text("0\n1\n", &a.ptr) == SP_OK);
    Set out;
    CHECK(sp_set_combine(a.ptr, a.ptr, "quot", &out.ptr) == SP_ERR_DOMAIN);
    CHECK(std::strlen(sp_last_error()) > 0);
    CHECK(sp_set_combine(a.ptr, a.ptr, "frobnicate", &out.ptr) == SP_ERR_INPUT);
    CHECK(sp_set_parse_text("zzz\n", &out.ptr) == SP_ERR_INPUT);
    CHECK(sp_set_parse_file("/nonexistent/path.txt", &out.ptr) == SP_ERR_INPUT);
    CHECK(sp_set_dilate(a.ptr, "0", &out.ptr) == SP_ERR_DOMAIN);
    CHECK(sp_set_combine(nullptr, a.ptr, "sum", &out.ptr) == SP_ERR_INVALID_ARGUMENT);

    Str val;
    CHECK(sp_energy(a.ptr, nullptr, "diff", 9, &val.ptr) == SP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: generation and energies") {
    Set bw;
    REQUIRE(sp_set_generate("{\"kind\":\"bw\",\"S\":2,\"P\":2}", &bw.ptr) == SP_OK);
    Str text;
    REQUIRE(sp_set_format(bw.ptr, &text.ptr) == SP_OK);
    CHECK(text.view() == "2\n4\n6\n12\n");

    Set gp;
    REQUIRE(sp_set_generate("{\"kind\":\"gp\",\"n\":4,\"start\":\"1\",\"ratio\":\"2\"}", &gp.ptr) ==
            SP_OK);
    Str e;
    REQUIRE(sp_energy(gp.ptr, nullptr, "quot", 2, &e.ptr) == SP_OK);
    CHECK(e.view() == "44");

    Set bad;
    CHECK(sp_set_generate("{\"kind\":\"ap\",\"n\":0}", &bad.ptr) == SP_ERR_INPUT);
    CHECK(sp_set_generate("not json", &bad.ptr) == SP_ERR_INPUT);
}

TEST_CASE("c api: reports") {
    Set a;
    REQUIRE(sp_set_generate("{\"kind\":\"ap\",\"n\":8}", &a.ptr) == SP_OK);

    Rep stats;
    REQUIRE(sp_run_stats(a.ptr, nullptr, &stats.ptr) == SP_OK);
    Str json_text;
    REQUIRE(sp_report_render(stats.ptr, "json", &json_text.ptr) == SP_OK);
    CHECK(json_text.view().find("\"quantities\"") != std::string::npos);
    Str csv_text;
    REQUIRE(sp_report_render(stats.ptr, "csv", &csv_text.ptr) == SP_OK);
    CHECK(csv_text.view().rfind("section,", 0) == 0);
    CHECK(sp_report_render(stats.ptr, "yaml", &csv_text.ptr) == SP_ERR_INPUT);

    Rep verify;
    REQUIRE(sp_run_verify(a.ptr, "{\"seed\":1}", &verify.ptr) == SP_OK);
    CHECK(sp_report_passed(verify.ptr) == 1);

    Rep dec;
    REQUIRE(sp_run_decompose(a.ptr, "main", nullptr, &dec.ptr) == SP_OK);
    CHECK(sp_report_passed(dec.ptr) == 1);
    CHECK(sp_run_decompose(a.ptr, "sideways", nullptr, &dec.ptr) == SP_ERR_INPUT);

    Rep inc;
    REQUIRE(sp_run_incidence("random", nullptr, "{\"trials\":5}", &inc.ptr) == SP_OK);
    CHECK(sp_report_passed(inc.ptr) == 1);
    REQUIRE(sp_run_incidence("elekes", a.ptr, nullptr, &inc.ptr) == SP_OK);
    CHECK(sp_report_passed(inc.ptr) == 1);

    Rep sw;
    REQUIRE(sp_run_sweep("{\"family\":\"ap\",\"sizes\":[4,8],\"seed\":3}", &sw.ptr) == SP_OK);
    CHECK(sp_report_passed(sw.ptr) == 1);
    CHECK(sp_run_sweep("{\"family\":\"ap\"}", &sw.ptr) == SP_ERR_INPUT);
}

TEST_CASE("c api: version string") {
    CHECK(std::strlen(sp_version()) >= 5);
}
