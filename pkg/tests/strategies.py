"""Shared hypothesis strategies for instances and sequences."""

from hypothesis import strategies as st

from smtt.core import Instance, Job


@st.composite
def instances(draw, min_n=1, max_n=8, min_p=0, max_p=30, max_d=200):
    n = draw(st.integers(min_n, max_n))
    ps = draw(st.lists(st.integers(min_p, max_p), min_size=n, max_size=n))
    ds = draw(st.lists(st.integers(0, max_d), min_size=n, max_size=n))
    jobs = tuple(Job(id=i + 1, p=ps[i], d=ds[i]) for i in range(n))
    return Instance(name="hyp", jobs=jobs)


@st.composite
def instances_with_sequence(draw, **kwargs):
    inst = draw(instances(**kwargs))
    seq = draw(st.permutations(list(range(1, inst.n + 1))))
    return inst, list(seq)
