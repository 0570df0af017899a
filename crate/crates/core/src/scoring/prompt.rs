//! Few-shot prompt builders.
//!
//! Discriminative examples render as `Q: N (1) C1 (2) C2 A: (i)`; the test
//! example is appended without its answer. Generative examples render as
//! `Q: N A: C`. Both formats are byte-exact and pinned by golden tests.

use super::ScoringError;

/// Token budget (whitespace tokens) for an assembled prompt.
pub const DEFAULT_PROMPT_TOKEN_BUDGET: usize = 2048;

/// The discriminative format fits at most this many prompting examples
/// within the budget of the reference API.
pub const MAX_DISCRIMINATIVE_EXAMPLES: usize = 6;

#[derive(Debug, Clone)]
pub struct DiscriminativeExample {
    pub narrative: String,
    pub first: String,
    pub second: String,
    /// Index of the correct continuation (0 or 1); `None` for the test
    /// example.
    pub gold: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct GenerativeExample {
    pub narrative: String,
    /// `None` for the test example.
    pub continuation: Option<String>,
}

fn check_budget(prompt: String, budget: usize) -> Result<String, ScoringError> {
    let tokens = prompt.split_whitespace().count();
    if tokens > budget {
        Err(ScoringError::PromptOverBudget { tokens, budget })
    } else {
        Ok(prompt)
    }
}

/// Builds the discriminative few-shot prompt. At most
/// [`MAX_DISCRIMINATIVE_EXAMPLES`] prompting examples are allowed, and the
/// assembled prompt must fit the token budget.
pub fn fewshot_discriminative_prompt(
    examples: &[DiscriminativeExample],
    test: &DiscriminativeExample,
    budget: usize,
) -> Result<String, ScoringError> {
    if examples.len() > MAX_DISCRIMINATIVE_EXAMPLES {
        return Err(ScoringError::TooManyExamples {
            got: examples.len(),
            max: MAX_DISCRIMINATIVE_EXAMPLES,
        });
    }
    let mut parts: Vec<String> = Vec::with_capacity(examples.len() + 1);
    for ex in examples {
        let gold = ex.gold.unwrap_or(0);
        parts.push(format!(
            "Q: {} (1) {} (2) {} A: ({})",
            ex.narrative,
            ex.first,
            ex.second,
            gold + 1
        ));
    }
    parts.push(format!(
        "Q: {} (1) {} (2) {} A: ",
        test.narrative, test.first, test.second
    ));
    check_budget(parts.join("\n"), budget)
}

/// Builds the generative few-shot prompt; with no examples this degrades
/// to the zero-shot `Q: N A: ` form.
pub fn fewshot_generative_prompt(
    examples: &[GenerativeExample],
    test_narrative: &str,
    budget: usize,
) -> Result<String, ScoringError> {
    let mut parts: Vec<String> = Vec::with_capacity(examples.len() + 1);
    for ex in examples {
        let continuation = ex.continuation.as_deref().unwrap_or("");
        parts.push(format!("Q: {} A: {}", ex.narrative, continuation));
    }
    parts.push(format!("Q: {test_narrative} A: "));
    check_budget(parts.join("\n"), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(n: &str, a: &str, b: &str, gold: usize) -> DiscriminativeExample {
        DiscriminativeExample {
            narrative: n.into(),
            first: a.into(),
            second: b.into(),
            gold: Some(gold),
        }
    }

    #[test]
    fn discriminative_golden_format() {
        let prompt = fewshot_discriminative_prompt(
            &[example("n1", "a", "b", 0)],
            &example("n2", "c", "d", 0),
            DEFAULT_PROMPT_TOKEN_BUDGET,
        )
        .unwrap();
        assert_eq!(prompt, "Q: n1 (1) a (2) b A: (1)\nQ: n2 (1) c (2) d A: ");
    }

    #[test]
    fn second_gold_renders_as_two() {
        let prompt = fewshot_discriminative_prompt(
            &[example("n", "x", "y", 1)],
            &example("m", "u", "v", 0),
            DEFAULT_PROMPT_TOKEN_BUDGET,
        )
        .unwrap();
        assert!(prompt.starts_with("Q: n (1) x (2) y A: (2)\n"));
    }

    #[test]
    fn generative_zero_shot_degenerate() {
        let prompt =
            fewshot_generative_prompt(&[], "n", DEFAULT_PROMPT_TOKEN_BUDGET).unwrap();
        assert_eq!(prompt, "Q: n A: ");
    }

    #[test]
    fn generative_four_examples() {
        let examples: Vec<GenerativeExample> = (0..4)
            .map(|i| GenerativeExample {
                narrative: format!("n{i}"),
                continuation: Some(format!("c{i}")),
            })
            .collect();
        let prompt =
            fewshot_generative_prompt(&examples, "t", DEFAULT_PROMPT_TOKEN_BUDGET).unwrap();
        assert_eq!(
            prompt,
            "Q: n0 A: c0\nQ: n1 A: c1\nQ: n2 A: c2\nQ: n3 A: c3\nQ: t A: "
        );
    }

    #[test]
    fn seven_discriminative_examples_is_an_error() {
        let examples: Vec<DiscriminativeExample> =
            (0..7).map(|i| example(&format!("n{i}"), "a", "b", 0)).collect();
        assert!(matches!(
            fewshot_discriminative_prompt(
                &examples,
                &example("t", "c", "d", 0),
                DEFAULT_PROMPT_TOKEN_BUDGET
            ),
            Err(ScoringError::TooManyExamples { got: 7, max: 6 })
        ));
    }

    #[test]
    fn budget_overflow_is_an_error() {
        let long = "w ".repeat(3000);
        assert!(matches!(
            fewshot_generative_prompt(&[], &long, DEFAULT_PROMPT_TOKEN_BUDGET),
            Err(ScoringError::PromptOverBudget { .. })
        ));
    }
}
