import org.junit.Test;
import org.openqa.selenium.By;

public class UserAdminPair {

    @Test
    public void addUserTest() {
        driver.findElement(By.id("login")).sendKeys("admin");
        driver.findElement(By.id("login_btn")).click();
        driver.findElement(By.id("username")).sendKeys("user001");
        driver.findElement(By.id("save_btn")).click();
        assertEquals("The new user has been created", driver.findElement(By.id("flash")).getText());
    }

    @Test
    public void searchUserTest() {
        driver.findElement(By.id("login")).sendKeys("admin");
        driver.findElement(By.id("search_user")).sendKeys("user001");
        driver.findElement(By.id("search_btn")).click();
    }
}
