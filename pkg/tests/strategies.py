import hypothesis.strategies as st

from tracemon.formula import Next, Not, Or, TT, Until


def formulas(letters, max_leaves=4):
    leaves = st.sampled_from([Next(x, TT()) for x in letters] + [TT()])

    def extend(children):
        return st.one_of(
            st.builds(Not, children),
            st.builds(Or, children, children),
            st.builds(Until, children, children),
            st.builds(Next, st.sampled_from(letters), children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def words(letters, max_size=6, min_size=0):
    return st.lists(st.sampled_from(letters), min_size=min_size, max_size=max_size).map(tuple)
