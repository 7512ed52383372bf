// Clipboard write with a select-all fallback when permission is denied.

export async function copyToClipboard(
  value: string,
  fallbackTarget?: HTMLElement,
): Promise<boolean> {
  try {
    await navigator.clipboard.writeText(value);
    return true;
  } catch {
    // no clipboard permission: select the text so a manual copy works
    if (fallbackTarget) {
      const selection = window.getSelection();
      if (selection) {
        const range = document.createRange();
        range.selectNodeContents(fallbackTarget);
        selection.removeAllRanges();
        selection.addRange(range);
      }
    }
    return false;
  }
}
