#pragma once

#include <string_view>

namespace polar::augment {

// Built-in copy of data/confusables.tsv (Latin, Cyrillic, Greek, Armenian).
inline constexpr std::string_view kDefaultConfusables = R"tsv(# Cross-script homoglyphs: source<TAB>substitutes separated by spaces.
# One code point replaces one code point; every substitute is from another script.
a	а
c	с ϲ
d	ԁ
e	е
h	һ հ
i	і ι
j	ј ϳ
l	ӏ
n	ո
o	о ο օ
p	р ρ
q	ԛ զ
s	ѕ
u	ս υ
v	ν ѵ
w	ԝ ѡ
x	х χ
y	у γ
A	А Α
B	В Β
C	С Ϲ
E	Е Ε
H	Н Η
I	І Ι
J	Ј Ϳ
K	К Κ
M	М Μ
N	Ν
O	О Ο Օ
P	Р Ρ
S	Ѕ Տ
T	Т Τ
X	Х Χ
Y	Ү Υ
Z	Ζ
а	a
е	e
о	o ο
р	p ρ
с	c
у	y
х	x χ
і	i
ј	j
ѕ	s
һ	h
А	A Α
В	B Β
Е	E Ε
К	K Κ
М	M Μ
Н	H Η
О	O Ο
Р	P Ρ
С	C
Т	T Τ
Х	X Χ
ο	o о
ν	v
ι	i
ρ	p р
Α	A А
Β	B В
Ε	E Е
Ζ	Z
Η	H Н
Ι	I І
Κ	K К
Μ	M М
Ν	N
Ο	O О
Ρ	P Р
Τ	T Т
Υ	Y
Χ	X Х
)tsv";

}  // namespace polar::augment
