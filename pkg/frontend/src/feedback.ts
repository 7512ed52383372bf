// Star-rating widget, fixed at the top right of the interface.

const MAX_COMMENT = 2000;

export interface FeedbackSubmit {
  (stars: number, comment: string | null): Promise<void>;
}

export function renderFeedbackWidget(onSubmit: FeedbackSubmit): HTMLElement {
  const widget = document.createElement("div");
  widget.className = "feedback-widget";

  const caption = document.createElement("span");
  caption.textContent = "Rate this conversation:";
  widget.appendChild(caption);

  const starRow = document.createElement("div");
  starRow.className = "star-row";
  let selected = 0;
  const starButtons: HTMLButtonElement[] = [];
  for (let value = 1; value <= 5; value += 1) {
    const star = document.createElement("button");
    star.type = "button";
    star.className = "star";
    star.textContent = "☆";
    star.setAttribute("aria-label", `${value} star${value > 1 ? "s" : ""}`);
    star.addEventListener("click", () => {
      selected = value;
      starButtons.forEach((b, i) => {
        b.textContent = i < value ? "★" : "☆";
      });
      refresh();
    });
    starButtons.push(star);
    starRow.appendChild(star);
  }
  widget.appendChild(starRow);

  const comment = document.createElement("textarea");
  comment.className = "feedback-comment";
  comment.placeholder = "Optional comment";
  widget.appendChild(comment);

  const counter = document.createElement("span");
  counter.className = "comment-counter";
  widget.appendChild(counter);

  const submit = document.createElement("button");
  submit.type = "button";
  submit.className = "feedback-submit";
  submit.textContent = "Send feedback";
  submit.disabled = true;
  widget.appendChild(submit);

  const toast = document.createElement("span");
  toast.className = "feedback-toast";
  widget.appendChild(toast);

  function refresh() {
    const tooLong = comment.value.length > MAX_COMMENT;
    counter.textContent = `${comment.value.length}/${MAX_COMMENT}`;
    counter.classList.toggle("over-limit", tooLong);
    submit.disabled = selected === 0 || tooLong;
  }
  comment.addEventListener("input", refresh);
  refresh();

  submit.addEventListener("click", async () => {
    submit.disabled = true;
    try {
      await onSubmit(selected, comment.value.trim() || null);
      toast.textContent = "Thanks for the feedback!";
      // reset on ack
      selected = 0;
      starButtons.forEach((b) => (b.textContent = "☆"));
      comment.value = "";
      refresh();
      setTimeout(() => {
        toast.textContent = "";
      }, 3000);
    } catch (error) {
      toast.textContent = `Could not send: ${String(error)}`;
      refresh();
    }
  });

  return widget;
}
