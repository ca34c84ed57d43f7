import pytest

from consult.kb import (
    Disease,
    Findings,
    KnowledgeBase,
    Link,
    Manifestation,
    SubvalueNode,
    Treatment,
)

# One line per acceptance criterion, echoed after the run (stdout inside
# tests is captured, and these belong in the terminal record).
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


def make_kb(diseases=(), manifestations=(), treatments=(), subvalues=(), version=1):
    return KnowledgeBase(
        version=version,
        diseases=tuple(diseases),
        manifestations=tuple(manifestations),
        treatments=tuple(treatments),
        subvalues=tuple(subvalues),
    )


def single_pair_kb(
    prior=0.3,
    side_effect=0.9,
    morbidity=0.2,
    treated=0.95,
    leak=0.0,
    strength=1.0,
    with_manifestation=False,
):
    """One disease, one treatment, one 4-entry subvalue table: the running
    example: table (1, 0.9, 0.2, 0.95) over (disease, treatment)."""
    manifestations = ()
    if with_manifestation:
        manifestations = (
            Manifestation(
                id="m1", name="sign", leak=leak,
                links=(Link(disease="d1", strength=strength),),
            ),
        )
    return make_kb(
        diseases=[Disease(id="d1", name="the disease", prior=prior)],
        manifestations=manifestations,
        treatments=[Treatment(id="t1", name="the treatment", treats=("d1",))],
        subvalues=[
            SubvalueNode(
                id="u1",
                disease_parents=("d1",),
                treatment_parents=("t1",),
                table={"00": 1.0, "01": side_effect, "10": morbidity, "11": treated},
            )
        ],
    )


@pytest.fixture
def overlap_kb():
    """Two diseases sharing one manifestation; three treatments.

    t_a and t_p both treat d_a (through the shared node u_a); t_p also
    harms patients who have d_b (interaction node u_x); t_r treats d_b.
    Clamping t_p false must split t_a and t_r into separate components.
    """
    return make_kb(
        diseases=[
            Disease(id="d_a", name="disease A", prior=0.02),
            Disease(id="d_b", name="disease B", prior=0.03),
        ],
        manifestations=[
            Manifestation(
                id="m_shared",
                name="shared sign",
                leak=0.05,
                links=(
                    Link(disease="d_a", strength=0.8),
                    Link(disease="d_b", strength=0.7),
                ),
            ),
            Manifestation(
                id="m_a", name="A-specific sign", leak=0.02,
                links=(Link(disease="d_a", strength=0.75),),
            ),
            Manifestation(
                id="m_b", name="B-specific sign", leak=0.02,
                links=(Link(disease="d_b", strength=0.75),),
            ),
        ],
        treatments=[
            Treatment(id="t_a", name="primary treatment for A", treats=("d_a",)),
            Treatment(id="t_p", name="risky treatment for A", treats=("d_a",)),
            Treatment(id="t_r", name="treatment for B", treats=("d_b",)),
        ],
        subvalues=[
            SubvalueNode(
                id="u_a",
                disease_parents=("d_a",),
                treatment_parents=("t_a", "t_p"),
                table={
                    "000": 1.0, "001": 0.92, "010": 0.95, "011": 0.9,
                    "100": 0.3, "101": 0.75, "110": 0.7, "111": 0.85,
                },
            ),
            SubvalueNode(
                id="u_x",
                disease_parents=("d_b",),
                treatment_parents=("t_p",),
                table={"00": 1.0, "01": 1.0, "10": 1.0, "11": 0.15},
            ),
            SubvalueNode(
                id="u_r",
                disease_parents=("d_b",),
                treatment_parents=("t_r",),
                table={"00": 1.0, "01": 0.93, "10": 0.35, "11": 0.88},
            ),
        ],
    )


@pytest.fixture
def interaction_chain_kb():
    """Three diseases with one shared manifestation and three treatments;
    the middle treatment interacts negatively with each of the other two.
    Clamping the middle treatment false leaves the outer two independent.
    """
    return make_kb(
        diseases=[
            Disease(id="d_1", name="disease 1", prior=0.04),
            Disease(id="d_2", name="disease 2", prior=0.05),
            Disease(id="d_3", name="disease 3", prior=0.03),
        ],
        manifestations=[
            Manifestation(
                id="m_shared",
                name="shared sign",
                leak=0.05,
                links=(
                    Link(disease="d_1", strength=0.7),
                    Link(disease="d_2", strength=0.6),
                    Link(disease="d_3", strength=0.8),
                ),
            ),
        ],
        treatments=[
            Treatment(id="t_1", name="treatment 1", treats=("d_1",)),
            Treatment(id="t_2", name="treatment 2", treats=("d_2",)),
            Treatment(id="t_3", name="treatment 3", treats=("d_3",)),
        ],
        subvalues=[
            SubvalueNode(
                id="u_1", disease_parents=("d_1",), treatment_parents=("t_1",),
                table={"00": 1.0, "01": 0.9, "10": 0.25, "11": 0.9},
            ),
            SubvalueNode(
                id="u_2", disease_parents=("d_2",), treatment_parents=("t_2",),
                table={"00": 1.0, "01": 0.9, "10": 0.3, "11": 0.85},
            ),
            SubvalueNode(
                id="u_3", disease_parents=("d_3",), treatment_parents=("t_3",),
                table={"00": 1.0, "01": 0.9, "10": 0.2, "11": 0.9},
            ),
            SubvalueNode(
                id="u_x12", disease_parents=(), treatment_parents=("t_1", "t_2"),
                table={"00": 1.0, "01": 1.0, "10": 1.0, "11": 0.5},
            ),
            SubvalueNode(
                id="u_x23", disease_parents=(), treatment_parents=("t_2", "t_3"),
                table={"00": 1.0, "01": 1.0, "10": 1.0, "11": 0.55},
            ),
        ],
    )
