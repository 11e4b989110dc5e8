#include <cstring>

#include "camps/errors.hpp"
#include "camps/models.hpp"
#include "camps/textio.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace camps;

TEST_CASE("numbers print with 12 significant digits") {
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-2.0) == "-2");
    CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("fnv1a64 matches the published test vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(spec_hash_line(fnv1a64("")) == "# spec=cbf29ce484222325\n");
}

TEST_CASE("pauli sum text round trip") {
    for (const PauliSum& h :
         {ising_chain(6, 0.7), xxz_chain(6, 0.5), dual_ising_chain(6, 1.0)}) {
        std::string text = pauli_sum_to_text(h);
        CHECK(pauli_sum_from_text(text) == h);
        CHECK(pauli_sum_to_text(pauli_sum_from_text(text)) == text);
    }
}

TEST_CASE("pauli sum parser skips comments and validates lines") {
    PauliSum h = pauli_sum_from_text("# spec=0123456789abcdef\n\n-1 ZZI\n0.5 IXI # comment\n");
    CHECK(h.n_terms() == 2);
    CHECK(h.n_sites() == 3);

    try {
        pauli_sum_from_text("-1 ZZI\n0.5 IQI\n");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(pauli_sum_from_text("-1 ZZI\n0.5 IX\n"), FormatError);
    CHECK_THROWS_AS(pauli_sum_from_text("abc ZZI\n"), FormatError);
    CHECK_THROWS_AS(pauli_sum_from_text("-1\n"), FormatError);
    CHECK_THROWS_AS(pauli_sum_from_text("# only comments\n"), FormatError);
}

TEST_CASE("circuit log text round trip") {
    CircuitLog log;
    log.push_back({1, 0, CliffordTableau::cnot(1), 0.6931471805599453, 0.0});
    log.push_back({2, 5, CliffordTableau::swap_gate(), 1.23456789012345, 0.987654321});
    log.push_back({3, 2, compose(CliffordTableau::cnot(0), CliffordTableau::swap_gate()),
                   0.25, 0.125});

    std::string text = circuit_log_to_text(log);
    CircuitLog back = circuit_log_from_text(text);
    REQUIRE(back.size() == log.size());
    for (size_t i = 0; i < log.size(); ++i) {
        CHECK(back[i].sweep == log[i].sweep);
        CHECK(back[i].bond == log[i].bond);
        CHECK(back[i].gate == log[i].gate);
        CHECK(back[i].entropy_before ==
              doctest::Approx(log[i].entropy_before).epsilon(1e-11));
        CHECK(back[i].entropy_after == doctest::Approx(log[i].entropy_after).epsilon(1e-11));
    }
    // Writer output re-parses and re-prints byte-identically.
    CHECK(circuit_log_to_text(back) == text);
    // Headers and blank lines are skipped.
    CHECK(circuit_log_from_text("# spec=00\n\n" + text).size() == log.size());
}

TEST_CASE("circuit log parser rejects malformed lines") {
    std::string good = "sweep=1 bond=0 gate=" + CliffordTableau::cnot(0).encode() +
                       " S_before=1 S_after=0.5\n";
    CHECK(circuit_log_from_text(good).size() == 1);
    CHECK_THROWS_AS(circuit_log_from_text("sweep=1 bond=0 S_before=1 S_after=0.5\n"),
                    FormatError);
    CHECK_THROWS_AS(
        circuit_log_from_text("bond=0 sweep=1 gate=X1->+XX;Z1->+ZI;X2->+IX;Z2->+ZZ "
                              "S_before=1 S_after=0.5\n"),
        FormatError);
    try {
        circuit_log_from_text(good + "sweep=2 bond=1 gate=garbage S_before=1 S_after=1\n");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(circuit_log_from_text("sweep=0 bond=0 gate=" +
                                          CliffordTableau::cnot(0).encode() +
                                          " S_before=1 S_after=0.5\n"),
                    FormatError);
}

TEST_CASE("table text round trip") {
    TextTable t;
    t.columns = {"cut", "entropy"};
    t.meta = {"spec=cbf29ce484222325", "model=ising L=16"};
    t.rows = {{1, 0.25}, {2, 0.5}, {3, 0.125}};

    std::string text = table_to_text(t);
    TextTable back = table_from_text(text);
    CHECK(back.columns == t.columns);
    CHECK(back.meta == t.meta);
    REQUIRE(back.rows.size() == t.rows.size());
    for (size_t r = 0; r < t.rows.size(); ++r)
        for (size_t c = 0; c < t.columns.size(); ++c) CHECK(back.rows[r][c] == t.rows[r][c]);
    CHECK(table_to_text(back) == text);

    TextTable empty;
    empty.columns = {"x"};
    CHECK(table_from_text(table_to_text(empty)).columns == empty.columns);
}

TEST_CASE("table parser diagnostics") {
    CHECK_THROWS_AS(table_from_text("1\t2\n"), FormatError);       // no header
    CHECK_THROWS_AS(table_from_text(""), FormatError);             // nothing at all
    try {
        table_from_text("# a\tb\n1\t2\n3\n");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(table_from_text("# a\tb\n1\tx\n"), FormatError);
    CHECK_THROWS_AS(table_from_text("# a\tb\n1\t2\n# late comment\n"), FormatError);

    TextTable bad;
    bad.columns = {"a", "b"};
    bad.rows = {{1.0}};
    CHECK_THROWS_AS(table_to_text(bad), ArgumentError);
}

TEST_CASE("config parser: sections, comments, typed getters") {
    std::string text =
        "# run configuration\n"
        "job = camps\n"
        "[model]\n"
        "name = ising   # transverse field\n"
        "g = 1.0\n"
        "[grid]\n"
        "L = 16, 24, 32\n"
        "D = 64\n"
        "[solver]\n"
        "n_sweeps = 40\n"
        "seed = 7\n";
    ConfigMap cfg = parse_config(text);
    CHECK(cfg.get("job") == "camps");
    CHECK(cfg.get("model.name") == "ising");
    CHECK(cfg.get_double("model.g") == 1.0);
    CHECK(cfg.get_long("solver.n_sweeps") == 40);
    CHECK(cfg.get_long_or("solver.missing", 5) == 5);
    CHECK(cfg.get_or("model.missing", "dflt") == "dflt");
    std::vector<long> L = cfg.get_long_list("grid.L");
    REQUIRE(L.size() == 3);
    CHECK(L[0] == 16);
    CHECK(L[2] == 32);
    CHECK(cfg.get_long_list("grid.D") == std::vector<long>{64});
    CHECK(cfg.has("solver.seed"));
    CHECK(!cfg.has("seed"));
    CHECK(cfg.keys().front() == "job");
    CHECK(cfg.line_of("model.g") == 5);
}

TEST_CASE("config parser diagnostics carry line numbers") {
    try {
        parse_config("a = 1\na = 2\n");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_config("just words\n"), FormatError);
    CHECK_THROWS_AS(parse_config("[unterminated\nk = v\n"), FormatError);
    CHECK_THROWS_AS(parse_config("k =\n"), FormatError);
    CHECK_THROWS_AS(parse_config("bad key = v\n"), FormatError);

    ConfigMap cfg = parse_config("k = notanumber\n");
    CHECK_THROWS_AS(cfg.get_long("k"), FormatError);
    CHECK_THROWS_AS(cfg.get_double("k"), FormatError);
    CHECK_THROWS_AS(cfg.get("absent"), FormatError);
    CHECK_THROWS_AS(cfg.get_long_list("absent"), FormatError);
}

TEST_CASE("summary writer emits parseable key-value lines") {
    std::vector<std::pair<std::string, std::string>> kv = {
        {"energy", format_number(-1.2749087405)}, {"L", "12"}, {"model", "ising"}};
    std::string text = summary_to_text(kv);
    CHECK(text == "energy = -1.2749087405\nL = 12\nmodel = ising\n");
    ConfigMap cfg = parse_config(text);
    CHECK(cfg.get_double("energy") == -1.2749087405);
    CHECK(cfg.get_long("L") == 12);
    CHECK_THROWS_AS(summary_to_text({{"bad key", "v"}}), ArgumentError);
    CHECK_THROWS_AS(summary_to_text({{"k", "line\nbreak"}}), ArgumentError);
}

TEST_CASE("mps checkpoint round trips bit-exactly") {
    testutil::Rng rng(0xc4ec5u);
    MpsState mps;
    mps.n_sites = 4;
    mps.max_bond = 3;
    mps.center = -1;
    std::vector<std::pair<long, long>> dims = {{1, 2}, {2, 3}, {3, 2}, {2, 1}};
    for (auto [dl, dr] : dims) {
        SiteTensor<cplx> t(dl, dr);
        for (long c = 0; c < t.m.cols(); ++c)
            for (long r = 0; r < t.m.rows(); ++r)
                t.m(r, c) = cplx(rng.symmetric(), rng.symmetric());
        mps.tensors.push_back(std::move(t));
    }

    std::string path = "test_checkpoint.mps";
    save_mps(mps, path);
    MpsState back = load_mps(path);
    CHECK(back.n_sites == mps.n_sites);
    CHECK(back.max_bond == mps.max_bond);
    CHECK(back.center == mps.center);
    REQUIRE(back.tensors.size() == mps.tensors.size());
    for (size_t k = 0; k < mps.tensors.size(); ++k) {
        CHECK(back.tensors[k].dl == mps.tensors[k].dl);
        CHECK(back.tensors[k].dr == mps.tensors[k].dr);
        REQUIRE(back.tensors[k].m.size() == mps.tensors[k].m.size());
        CHECK(std::memcmp(back.tensors[k].m.data(), mps.tensors[k].m.data(),
                          sizeof(cplx) * size_t(mps.tensors[k].m.size())) == 0);
    }
    std::remove(path.c_str());
}

TEST_CASE("mps checkpoint rejects corruption") {
    MpsState mps = random_product_state(3, 11);
    std::string path = "test_checkpoint_bad.mps";
    save_mps(mps, path);
    std::string bytes = read_text_file(path);

    std::string flipped = bytes;
    flipped[0] = 'X';
    write_text_file(path, flipped);
    CHECK_THROWS_AS(load_mps(path), FormatError);

    write_text_file(path, bytes.substr(0, bytes.size() - 5));
    CHECK_THROWS_AS(load_mps(path), FormatError);

    write_text_file(path, bytes + "!");
    CHECK_THROWS_AS(load_mps(path), FormatError);

    write_text_file(path, bytes);
    CHECK(load_mps(path).n_sites == 3);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_mps("definitely_missing_file.mps"), ArgumentError);
    CHECK_THROWS_AS(read_text_file("definitely_missing_file.txt"), ArgumentError);
}
