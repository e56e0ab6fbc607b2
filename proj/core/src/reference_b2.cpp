#include "sq2/reference_b2.hpp"

namespace sq2 {

namespace {

const char kText[] = R"mod(32

0 1 2 3 3 4 4 5 5 6 6 6 7 7 7 8 8 9 9 9 10 10 10 11 11 12 12 13 13 14
15 16

0 1 1 1
0 2 1 2
0 3 1 3
0 4 1 5
0 5 1 7
0 6 1 9
0 7 1 12
0 10 1 20
0 12 1 25
0 13 1 27
0 14 1 29

1 2 2 3 4
1 3 1 6
1 4 2 7 8
1 5 1 10
1 6 2 12 13
1 7 1 15
1 8 1 17
1 9 1 20
1 12 1 27
1 14 1 30
1 15 1 31

2 1 1 3
2 2 1 6
2 4 3 9 10 11
2 5 2 12 14
2 6 2 15 16
2 7 1 18
2 8 1 21
2 9 1 23
2 10 1 25
2 11 1 27
2 12 1 29


3 2 1 8
3 3 1 10
3 4 2 12 14
3 6 3 17 18 19
3 7 2 20 22
3 8 2 23 24
3 9 1 26
3 10 2 27 28
3 11 1 29
3 12 1 30
3 13 1 31
4 1 1 6
4 2 1 8
4 3 1 10
4 4 1 13
4 5 1 15
4 6 1 17
4 7 1 20
4 12 1 30
4 13 1 31

5 1 1 7
5 2 2 9 10
5 3 1 12
5 4 1 16
5 5 1 18
5 6 2 20 22
5 12 1 31

6 2 1 10
6 4 1 15
6 6 1 20
6 12 1 31

7 2 2 12 13
7 3 1 15
7 4 2 17 18
7 5 1 20
7 6 1 24
7 7 1 26

8 1 1 10
8 4 2 17 19
8 5 2 20 22
8 6 1 24
8 7 1 26
8 8 1 28
8 9 1 29
8 10 1 30
8 11 1 31

9 1 1 12
9 2 1 15
9 4 2 20 21
9 5 1 23
9 6 2 25 26
9 7 1 27
9 8 1 29

10 4 2 20 22
10 6 1 26
10 8 1 29
10 10 1 31

11 1 1 14
11 2 1 16
11 3 1 18
11 4 1 21
11 5 1 23
11 6 1 25
11 7 1 27
11 10 1 31

12 2 1 17
12 3 1 20
12 4 1 23
12 6 2 27 28
12 7 1 29
12 8 1 30
12 9 1 31

13 1 1 15
13 2 1 17
13 3 1 20
13 4 1 24
13 5 1 26

14 2 2 18 19
14 3 1 22
14 4 2 23 24
14 5 1 26
14 6 2 27 28
14 7 1 29
14 8 1 30
14 9 1 31

15 2 1 20
15 4 1 26

16 1 1 18
16 2 1 22
16 4 2 25 26
16 5 1 27
16 6 1 29

17 1 1 20
17 4 1 28
17 5 1 29
17 6 1 30
17 7 1 31

18 2 1 24
18 3 1 26
18 4 1 27
18 6 1 30
18 7 1 31

19 1 1 22
19 2 1 24
19 3 1 26
19 4 1 28
19 5 1 29
19 6 1 30
19 7 1 31

20 4 1 29
20 6 1 31

21 1 1 23
21 2 2 25 26
21 3 1 27
21 6 1 31

22 2 1 26
22 4 1 29
22 6 1 31

23 2 2 27 28
23 3 1 29
23 4 1 30
23 5 1 31

24 1 1 26
24 4 1 30
24 5 1 31

25 1 1 27
25 2 1 29
25 4 1 31

26 4 1 31

27 2 1 30
27 3 1 31

28 1 1 29
28 2 1 30
28 3 1 31

29 2 1 31

30 1 1 31


)mod";

}  // namespace

const std::string& reference_b2_text() {
    static const std::string text(kText[0] == 0x0A ? kText + 1 : kText);
    return text;
}

const FiniteModule& reference_b2() {
    static const FiniteModule m = parse_bruner(reference_b2_text());
    return m;
}

}  // namespace sq2
