#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "milnor/gauss.hpp"
#include "oracles.hpp"

using namespace milnor;

TEST_CASE("parsing the basic codes") {
  const BasedDiagram kink = parse_gauss_code("component 1: O1+ U1+");
  CHECK(kink.components() == 1);
  CHECK(kink.crossing_count() == 1);
  CHECK(kink.component(1)[0] == Event{1, Role::Over, 1});
  CHECK(kink.component(1)[1] == Event{1, Role::Under, 1});

  const BasedDiagram hopf = parse_gauss_code("component 1: U1+ O2+ \n component 2: O1+ U2+");
  CHECK(hopf.components() == 2);
  CHECK(hopf.crossing_count() == 2);

  // empty component is a crossing-free circle
  const BasedDiagram circle = parse_gauss_code("component 1:");
  CHECK(circle.component(1).empty());

  // comments and blank lines
  const BasedDiagram commented =
      parse_gauss_code("# a kink\n\ncomponent 1: O1+ U1+ # trailing\n");
  CHECK(same_normalized(commented, kink));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(parse_gauss_code("component 1: O1+ U2+"),
                       doctest::Contains("lacks an over event"), ParseError);
  CHECK_THROWS_WITH_AS(parse_gauss_code("component 1: O1+ U1-"),
                       doctest::Contains("mismatched signs"), ParseError);
  CHECK_THROWS_WITH_AS(parse_gauss_code("component 1: O1+ O1+ U1+ U1+"),
                       doctest::Contains("duplicate"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("component 1: X1+"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code(""), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("component 2: O1+ U1+"), ParseError);  // missing comp 1
}

TEST_CASE("serialization renumbers by first appearance and round-trips") {
  const BasedDiagram d = parse_gauss_code("component 1: O7- U9+ U7- O9+");
  CHECK(serialize(d) == "component 1: O1- U2+ U1- O2+\n");
  CHECK(normalize_gauss(serialize(d)) == serialize(d));

  SplitMix64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const BasedDiagram r = random_diagram(rng.range(1, 3), rng.range(0, 8), rng.next());
    const std::string code = serialize(r);
    CHECK(serialize(parse_gauss_code(code)) == code);
  }
}

TEST_CASE("arc table of the basic fixtures") {
  // trivial 2-component diagram: no unders, no writhe
  const ArcTable triv = arc_table(parse_gauss_code("component 1:\ncomponent 2:"));
  CHECK(triv.unders(1) == 0);
  CHECK(triv.unders(2) == 0);
  CHECK(triv.writhe[0] == 0);

  // Hopf: the over event of crossing 1 sits on the outgoing arc of comp 2
  const ArcTable hopf = arc_table(fixtures::diagram("hopf.gauss"));
  CHECK(hopf.unders(1) == 1);
  CHECK(hopf.pass(1, 1).over == ArcRef{2, 0});
  CHECK(hopf.pass(1, 1).sign == 1);
  CHECK(hopf.writhe[0] == 0);
  CHECK(hopf.pass(2, 1).over == ArcRef{1, 1});

  // kink: the over arc is the component's own outgoing arc, writhe +1
  const ArcTable kink = arc_table(fixtures::diagram("kink.gauss"));
  CHECK(kink.unders(1) == 1);
  CHECK(kink.pass(1, 1).over == ArcRef{1, 0});
  CHECK(kink.pass(1, 1).sign == 1);
  CHECK(kink.writhe[0] == 1);
}

TEST_CASE("R1 insert and delete are inverse") {
  const BasedDiagram triv = BasedDiagram::trivial(1);
  for (bool over_first : {true, false}) {
    for (int sign : {1, -1}) {
      const BasedDiagram kinked = apply_move(
          triv, MoveSpec{.kind = MoveKind::R1Insert, .comp = 1, .pos = 0, .sign = sign,
                         .over_first = over_first});
      CHECK(kinked.crossing_count() == 1);
      const BasedDiagram back =
          apply_move(kinked, MoveSpec{.kind = MoveKind::R1Delete, .comp = 1, .pos = 0});
      CHECK(same_normalized(back, triv));
    }
  }
}

TEST_CASE("R2 insert and delete are inverse") {
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  for (bool rev : {false, true}) {
    const MoveSpec ins{.kind = MoveKind::R2Insert, .comp = 1, .pos = 1, .comp2 = 2, .pos2 = 0,
                       .sign = -1, .under_reversed = rev};
    const BasedDiagram poked = apply_move(hopf, ins);
    CHECK(poked.crossing_count() == 4);
    const MoveSpec del{.kind = MoveKind::R2Delete, .comp = 1, .pos = 1, .comp2 = 2, .pos2 = 0};
    CHECK(same_normalized(apply_move(poked, del), hopf));
  }
}

TEST_CASE("OC swaps adjacent over events") {
  const BasedDiagram d = parse_gauss_code(
      "component 1: O3+ O5- U3+ U5-");
  const BasedDiagram swapped = apply_move(d, MoveSpec{.kind = MoveKind::OC, .comp = 1, .pos = 0});
  CHECK(swapped.component(1)[0] == Event{5, Role::Over, -1});
  CHECK(swapped.component(1)[1] == Event{3, Role::Over, 1});

  CHECK_THROWS_AS(apply_move(d, MoveSpec{.kind = MoveKind::OC, .comp = 1, .pos = 1}), MoveError);
}

TEST_CASE("crossing change flips role and sign; kills the Hopf linking") {
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  const BasedDiagram changed =
      apply_move(hopf, MoveSpec{.kind = MoveKind::CrossingChange, .crossing = 1});
  CHECK(oracles::linking_count(hopf, 1, 2) == 1);
  CHECK(oracles::linking_count(changed, 1, 2) == 0);
}

TEST_CASE("moves reject base-point-crossing regions") {
  // crossing 1's kink pair sits at the two ends of the list, split by the
  // base point: the pair (last, first) is not a deletable site
  const BasedDiagram d = parse_gauss_code("component 1: U1+ O2+ U2+ O1+");
  CHECK_THROWS_WITH_AS(
      apply_move(d, MoveSpec{.kind = MoveKind::R1Delete, .comp = 1, .pos = 3}),
      doctest::Contains("base point"), MoveError);
  CHECK_THROWS_WITH_AS(
      apply_move(d, MoveSpec{.kind = MoveKind::R1Delete, .comp = 1, .pos = 0}),
      doctest::Contains("not a kink"), MoveError);
  // after moving the base point out of the way the kink deletes fine
  const BasedDiagram rotated = rebase(d, 1, 3);
  CHECK_NOTHROW(apply_move(rotated, MoveSpec{.kind = MoveKind::R1Delete, .comp = 1, .pos = 0}));
}

TEST_CASE("rebase rotates the event list") {
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  const BasedDiagram r = rebase(hopf, 1, 1);
  CHECK(r.component(1)[0] == Event{2, Role::Over, 1});
  CHECK(r.component(1)[1] == Event{1, Role::Under, 1});
  CHECK(same_normalized(rebase(r, 1, 1), hopf));
}

TEST_CASE("random_moves: determinism, validity closure, replayability") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const BasedDiagram d = random_diagram(rng.range(1, 3), rng.range(0, 6), rng.next());
    const std::uint64_t seed = rng.next();
    const MoveTrace a = random_moves(d, 20, seed);
    const MoveTrace b = random_moves(d, 20, seed);
    CHECK(same_normalized(a.result, b.result));
    REQUIRE(a.moves.size() == b.moves.size());
    for (std::size_t i = 0; i < a.moves.size(); ++i) CHECK(a.moves[i].str() == b.moves[i].str());

    // every intermediate state revalidates and the trace replays
    BasedDiagram cur = d;
    for (const MoveSpec& m : a.moves) {
      cur = apply_move(cur, m);  // would throw if not re-applicable
      CHECK_NOTHROW(BasedDiagram(cur.all()));
    }
    CHECK(same_normalized(cur, a.result));
    CHECK(same_normalized(replay(d, a.moves), a.result));
  }
}

TEST_CASE("random_moves uses only the sound invariance kinds") {
  const MoveTrace t = random_moves(fixtures::diagram("borromean.gauss"), 60, 4242);
  for (const MoveSpec& m : t.moves) {
    const bool sound = m.kind == MoveKind::R1Insert || m.kind == MoveKind::R1Delete ||
                       m.kind == MoveKind::R2Insert || m.kind == MoveKind::R2Delete ||
                       m.kind == MoveKind::R3 || m.kind == MoveKind::OC;
    CHECK(sound);
  }
}

TEST_CASE("R3 requires a planar-realizable pattern") {
  // braid-like triangle: top strand over both, middle over bottom
  const BasedDiagram good = parse_gauss_code(
      "component 1: O1+ O2+\n"
      "component 2: U1+ O3+\n"
      "component 3: U2+ U3+\n");
  // orders: top (x=1 over M) first then y=2: o_t = -1; middle: x then z: o_m = -1;
  // bottom: y then z: o_b = +1. normal family needs (e_x,e_y,e_z) = (+1,+1,+1). ok:
  const BasedDiagram moved =
      apply_move(good, MoveSpec{.kind = MoveKind::R3, .comp = 1, .pos = 0, .comp2 = 2, .pos2 = 0,
                                .comp3 = 3, .pos3 = 0});
  CHECK(moved.component(1)[0] == Event{2, Role::Over, 1});
  CHECK(moved.component(2)[0] == Event{3, Role::Over, 1});
  CHECK(moved.component(3)[0] == Event{3, Role::Under, 1});

  // flipping one crossing sign breaks realizability
  const BasedDiagram bad = parse_gauss_code(
      "component 1: O1- O2+\n"
      "component 2: U1- O3+\n"
      "component 3: U2+ U3+\n");
  CHECK_THROWS_WITH_AS(
      apply_move(bad, MoveSpec{.kind = MoveKind::R3, .comp = 1, .pos = 0, .comp2 = 2, .pos2 = 0,
                               .comp3 = 3, .pos3 = 0}),
      doctest::Contains("not planar-realizable"), MoveError);
}

TEST_CASE("R3 mirror family") {
  // reflected triangle: top order (x, y), signs (+1, -1, +1); rejected by the
  // normal sign relation, accepted by the mirrored one
  const BasedDiagram d = parse_gauss_code(
      "component 1: O1+ O2-\n"
      "component 2: O3+ U1+\n"
      "component 3: U2- U3+\n");
  const MoveSpec m{.kind = MoveKind::R3, .comp = 1, .pos = 0, .comp2 = 2, .pos2 = 0,
                   .comp3 = 3, .pos3 = 0};
  const BasedDiagram moved = apply_move(d, m);
  CHECK(moved.component(1)[0] == Event{2, Role::Over, -1});
  CHECK(moved.component(2)[0] == Event{1, Role::Under, 1});
  CHECK(moved.component(3)[0] == Event{3, Role::Under, 1});
  // the inverse slide restores the diagram
  CHECK(same_normalized(apply_move(moved, m), d));
}

TEST_CASE("R2 insert onto one component") {
  const BasedDiagram kink = fixtures::diagram("kink.gauss");
  const MoveSpec ins{.kind = MoveKind::R2Insert, .comp = 1, .pos = 0, .comp2 = 1, .pos2 = 2,
                     .sign = 1};
  const BasedDiagram poked = apply_move(kink, ins);
  CHECK(poked.crossing_count() == 3);
  CHECK(same_normalized(
      apply_move(poked, MoveSpec{.kind = MoveKind::R2Delete, .comp = 1, .pos = 0, .comp2 = 1,
                                 .pos2 = 4}),
      kink));
  CHECK_THROWS_AS(apply_move(kink, MoveSpec{.kind = MoveKind::R2Insert, .comp = 1, .pos = 1,
                                            .comp2 = 1, .pos2 = 1}),
                  MoveError);
}

TEST_CASE("normalization is stable over noisy but valid text") {
  const std::string noisy =
      "# noise\ncomponent   1 :  O17-   U99+\n\ncomponent 2: O99+ U17- # tail\n";
  const std::string canon = normalize_gauss(noisy);
  CHECK(canon == "component 1: O1- U2+\ncomponent 2: O2+ U1-\n");
  CHECK(normalize_gauss(canon) == canon);
}

TEST_CASE("random diagrams are deterministic per seed") {
  const BasedDiagram a = random_diagram(3, 9, 77);
  const BasedDiagram b = random_diagram(3, 9, 77);
  CHECK(same_normalized(a, b));
}
