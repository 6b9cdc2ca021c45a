#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace klm;
using fixtures::cfg;

namespace {

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t error_line(const std::string& text) {
    try {
        parse_vass(text);
    } catch (const parse_error& e) {
        return e.line;
    }
    return 0;
}

}  // namespace

TEST(Io, ShippedExample) {
    auto g = parse_vass(slurp(KLM_DATA_DIR "/g_ex.vass"));
    EXPECT_EQ(g, fixtures::g_ex());
    EXPECT_EQ(g.num_states(), 4u);
    EXPECT_EQ(g.transitions.size(), 9u);
}

TEST(Io, RoundTrip) {
    auto g = fixtures::g_ex();
    EXPECT_EQ(parse_vass(render_vass(g)), g);
    EXPECT_EQ(render_vass(parse_vass(render_vass(g))), render_vass(g));
    auto one = parse_vass("dim 1\nstate a\ninit a\nout a\n");
    EXPECT_EQ(one.num_states(), 1u);
    EXPECT_TRUE(one.transitions.empty());
}

TEST(Io, ErrorsCarryLines) {
    EXPECT_EQ(error_line("dim 3\nstate a\ninit a\nout a\ntrans t a a 1 2\n"), 5u);
    EXPECT_EQ(error_line("dim 1\nstate a\nstate a\ninit a\nout a\n"), 5u);
    EXPECT_EQ(error_line("dim 1\nstate a\ninit a\nout a\ntrans t a b 1\n"), 5u);
    EXPECT_EQ(error_line("dim 1\nbogus\n"), 2u);
    EXPECT_EQ(error_line("dim x\n"), 1u);
    EXPECT_GT(error_line("state a\n"), 0u);
}

TEST(Io, ConfigLiterals) {
    EXPECT_EQ(parse_config("0,w,2"), cfg({0, fixtures::w, 2}));
    EXPECT_EQ(parse_config("(1, 1, 0)"), cfg({1, 1, 0}));
    EXPECT_THROW(parse_config("0,w", false), parse_error);
    EXPECT_THROW(parse_config("0,-1"), parse_error);
    EXPECT_EQ(parse_action("(1,-1,0)"), fixtures::act({1, -1, 0}));
}

TEST(Io, Rendering) {
    std::vector<action> word = {fixtures::a(1), fixtures::a(3)};
    EXPECT_EQ(render_word(word), "(0,2,0) (1,0,0)");
    auto s = render_sequence(fixtures::xi_ex(), [](const vass&) { return std::string("G#0"); });
    EXPECT_EQ(s, "[0,0,2]{G#0}[1,1,0]");
}

TEST(Io, ForestRenderingListsBodiesOnce) {
    auto text = render_forest(full_decomposition(fixtures::xi_ex()));
    EXPECT_NE(text.find("node 0 parent=- rank="), std::string::npos);
    EXPECT_NE(text.find("G#0"), std::string::npos);
    auto body = render_vass(fixtures::g_ex());
    // the root VASS is only referenced in the sequences, its text is not repeated
    EXPECT_EQ(text.find(body), text.rfind(body));
}
