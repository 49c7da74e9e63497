#include <doctest.h>

#include <sstream>

#include "hardedge/ensembles.hpp"
#include "hardedge/matrix_io.hpp"

using namespace hardedge;

TEST_CASE("complex tokens") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0));
  CHECK(parse_complex("1+2i") == Complex(1, 2));
  CHECK(parse_complex("-1-2i") == Complex(-1, -2));
  CHECK(parse_complex("1e-3-2.5e+2i") == Complex(1e-3, -250));
  CHECK(parse_complex("-3i") == Complex(0, -3));
  CHECK(parse_complex("+3i") == Complex(0, 3));
  CHECK_THROWS(parse_complex("1+x i"));
  CHECK_THROWS(parse_complex(""));
  CHECK(format_complex(Complex(1, -2)) == "1-2i");
  CHECK(format_complex(Complex(0.5, 0)) == "0.5+0i");
  for (Complex z : {Complex(0.1, -1e-300), Complex(-7.25e10, 3.3333333333333333)}) {
    CHECK(parse_complex(format_complex(z)) == z);
  }
}

TEST_CASE("matrix round trip is exact") {
  for (Field field : {Field::Real, Field::Complex}) {
    const AtomDistribution atom =
        field == Field::Real ? AtomDistribution::real_gaussian() : AtomDistribution::complex_gaussian();
    const Matrix a = sample_matrix(EnsembleSpec{4, 6, atom, 0}, RngStream{1, 0}).matrix;
    std::stringstream buffer;
    write_matrix(buffer, a);
    const Matrix b = read_matrix(buffer);
    CHECK(b.field() == field);
    CHECK(b == a);
  }
}

TEST_CASE("malformed matrix text") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_matrix(in);
  };
  CHECK(read("2 2 real\n1 0\n0 1\n") == Matrix::identity(2));
  CHECK(read("1 2 complex\n1+1i 2\n").field() == Field::Complex);
  CHECK_THROWS(read(""));
  CHECK_THROWS(read("2 2\n1 0\n0 1\n"));
  CHECK_THROWS(read("2 2 quaternion\n1 0\n0 1\n"));
  CHECK_THROWS(read("2 2 real\n1 0\n0\n"));
  CHECK_THROWS(read("2 2 real\n1 0\n0 1 5\n"));
  CHECK_THROWS(read("1 1 real\n1+2i\n"));
  CHECK_THROWS(read("0 1 real\n"));
}
