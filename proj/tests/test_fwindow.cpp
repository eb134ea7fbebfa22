#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/fwindow.hpp"

using namespace fws;

TEST_CASE("window capacity divides dimension by period") {
  CHECK(window_capacity(make_descriptor(0, 2), 100) == 50);
  CHECK(window_capacity(make_descriptor(3, 5), 100) == 20);
  CHECK(window_capacity(make_descriptor(0, 1), 1) == 1);
  CHECK_THROWS_AS(window_capacity(make_descriptor(0, 3), 100), EngineError);
}

TEST_CASE("slots map to nominal grid times") {
  FWindow w(make_descriptor(1, 4), 1, 40);
  CHECK(w.capacity() == 10);
  CHECK(w.sync() == 1);
  CHECK(w.end() == 41);
  CHECK(w.slot_of(1) == 0);
  CHECK(w.slot_of(37) == 9);
  CHECK(w.slot_time(3) == 13);
  CHECK_THROWS_AS(w.slot_of(0), EngineError);
  CHECK_THROWS_AS(w.slot_of(41), EngineError);
  CHECK_THROWS_AS(w.slot_of(14), EngineError);  // off grid
}

TEST_CASE("set/present/event round trip") {
  FWindow w(make_descriptor(0, 2, PayloadKind::F32x2), 0, 10);
  CHECK(w.present_count() == 0);
  float v[2] = {1.5f, -2.f};
  w.set(2, 4, 2, v);
  CHECK(w.present(2));
  CHECK_FALSE(w.present(3));
  Event e = w.event(2);
  CHECK(e.present);
  CHECK(e.sync == 4);
  CHECK(e.duration == 2);
  CHECK(e.payload[0] == 1.5f);
  CHECK(e.payload[1] == -2.f);
  CHECK(w.present_count() == 1);
  w.clear_slot(2);
  CHECK(w.present_count() == 0);
}

TEST_CASE("slide moves forward and clears; backward rejected") {
  FWindow w(make_descriptor(0, 2), 0, 10);
  w.set_scalar(0, 0, 2, 1.f);
  w.slide(10);
  CHECK(w.sync() == 10);
  CHECK(w.present_count() == 0);
  w.set_scalar(0, 10, 2, 2.f);
  CHECK_THROWS_AS(w.slide(0), EngineError);
  w.reposition(0);  // reposition allows any direction
  CHECK(w.sync() == 0);
  CHECK(w.present_count() == 0);
}

TEST_CASE("validate catches model violations") {
  FWindow w(make_descriptor(0, 2), 0, 10);
  w.set_scalar(1, 2, 2, 1.f);
  w.validate();

  SUBCASE("overlapping active intervals") {
    w.set_scalar(2, 4, 3, 1.f);  // ends at 7
    w.set_scalar(3, 6, 1, 1.f);  // starts inside the previous event
    CHECK_THROWS_AS(w.validate(), EngineError);
  }
  SUBCASE("vsync outside its slot") {
    w.set_scalar(2, 6, 1, 1.f);
    CHECK_THROWS_AS(w.validate(), EngineError);
  }
  SUBCASE("non-positive duration") {
    w.set_scalar(2, 4, 0, 1.f);
    CHECK_THROWS_AS(w.validate(), EngineError);
  }
}

TEST_CASE("bitwise equality tracks all columns") {
  FWindow a(make_descriptor(0, 2), 0, 10);
  FWindow b(make_descriptor(0, 2), 0, 10);
  a.set_scalar(3, 6, 1, 4.f);
  b.set_scalar(3, 6, 1, 4.f);
  CHECK(a.bitwise_equal(b));
  b.set_scalar(3, 6, 2, 4.f);
  CHECK_FALSE(a.bitwise_equal(b));
}
